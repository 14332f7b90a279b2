#include "tomo/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

namespace tomo {

static_assert(std::endian::native == std::endian::little,
              "grid payloads are written in native order and must be little endian");

namespace {

using json = nlohmann::json;

std::string temp_sibling(const std::string& path) {
  std::random_device rd;
  std::ostringstream name;
  name << path << ".tmp" << std::hex << rd();
  return name.str();
}

}  // namespace

void write_grid_file(const GridFile& file, std::ostream& out) {
  const std::size_t expected = file.domain.size() * (file.is_complex ? 2 : 1);
  require(file.payload.size() == expected, "write_grid: payload size mismatch",
          ErrorCode::payload_size_mismatch);
  for (double v : file.payload)
    require(std::isfinite(v), "write_grid: non-finite sample", ErrorCode::non_finite_sample);

  json header;
  header["version"] = 1;
  header["shape"] = file.domain.shape();
  header["lo"] = file.domain.lo();
  header["hi"] = file.domain.hi();
  header["dtype"] = file.is_complex ? "c128-le" : "f64-le";
  header["order"] = "row-major";
  if (!file.axes.empty()) header["axes"] = file.axes;
  if (!file.attrs.empty()) header["attrs"] = file.attrs;
  const std::string text = header.dump();
  const auto len = static_cast<std::uint32_t>(text.size());

  out.write(grid_magic, sizeof grid_magic);
  char len_bytes[4];
  std::memcpy(len_bytes, &len, 4);
  out.write(len_bytes, 4);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.write(reinterpret_cast<const char*>(file.payload.data()),
            static_cast<std::streamsize>(file.payload.size() * sizeof(double)));
  require(static_cast<bool>(out), "write_grid: stream write failed", ErrorCode::io_failure);
}

GridFile read_grid_file(std::istream& in) {
  char magic[8] = {};
  in.read(magic, 8);
  require(in.gcount() == 8 && std::memcmp(magic, grid_magic, 8) == 0,
          "read_grid: magic mismatch (expected TOMOGRD1)", ErrorCode::bad_magic);
  std::uint32_t len = 0;
  char len_bytes[4];
  in.read(len_bytes, 4);
  require(in.gcount() == 4, "read_grid: truncated header length", ErrorCode::bad_header);
  std::memcpy(&len, len_bytes, 4);
  std::string text(len, '\0');
  in.read(text.data(), len);
  require(in.gcount() == static_cast<std::streamsize>(len), "read_grid: truncated header",
          ErrorCode::bad_header);

  GridFile file;
  try {
    const json header = json::parse(text);
    require(header.at("version").get<int>() == 1, "read_grid: unsupported version",
            ErrorCode::bad_header);
    require(header.at("order").get<std::string>() == "row-major",
            "read_grid: only row-major order is supported", ErrorCode::bad_header);
    const auto dtype = header.at("dtype").get<std::string>();
    require(dtype == "f64-le" || dtype == "c128-le", "read_grid: unsupported dtype " + dtype,
            ErrorCode::bad_header);
    file.is_complex = dtype == "c128-le";
    file.domain = BoxDomain(header.at("lo").get<std::vector<double>>(),
                            header.at("hi").get<std::vector<double>>(),
                            header.at("shape").get<std::vector<std::size_t>>());
    if (header.contains("axes")) file.axes = header["axes"].get<std::vector<std::string>>();
    if (header.contains("attrs"))
      file.attrs = header["attrs"].get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::bad_header, std::string("read_grid: malformed header: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::bad_header) throw;
    fail(ErrorCode::bad_header, std::string("read_grid: ") + e.what());
  }

  const std::size_t expected = file.domain.size() * (file.is_complex ? 2 : 1);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  require(bytes.size() == expected * sizeof(double),
          "read_grid: payload size mismatch (header promises " +
              std::to_string(expected * sizeof(double)) + " bytes, found " +
              std::to_string(bytes.size()) + ")",
          ErrorCode::payload_size_mismatch);
  file.payload.resize(expected);
  std::memcpy(file.payload.data(), bytes.data(), bytes.size());
  for (double v : file.payload)
    require(std::isfinite(v), "read_grid: non-finite sample", ErrorCode::non_finite_sample);
  return file;
}

void write_grid_file(const GridFile& file, const std::string& path) {
  std::ostringstream buffer(std::ios::binary);
  write_grid_file(file, buffer);
  write_text_atomic(path, buffer.str());
}

GridFile read_grid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "read_grid: cannot open " + path, ErrorCode::io_failure);
  return read_grid_file(in);
}

void write_text_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), "cannot open " + tmp + " for writing",
            ErrorCode::io_failure);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      fail(ErrorCode::io_failure, "write to " + tmp + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    fail(ErrorCode::io_failure, "cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

GridFile to_grid_file(const ScalarField& f) {
  return GridFile{f.domain(), {}, false, f.values(), {}};
}

ScalarField field_from(const GridFile& file) {
  require(!file.is_complex, "expected a real grid, found complex payload", ErrorCode::bad_header);
  return ScalarField(file.domain, file.payload);
}

GridFile to_grid_file(const TomogramTable& table) {
  return GridFile{table.grid, table.axes, false, table.values, {}};
}

TomogramTable table_from(const GridFile& file) {
  require(!file.is_complex, "expected a real table, found complex payload",
          ErrorCode::bad_header);
  require(file.axes.size() == static_cast<std::size_t>(file.domain.dim()),
          "table header needs one axis name per dimension", ErrorCode::bad_header);
  return TomogramTable{file.axes, file.domain, file.payload};
}

void write_grid(const ScalarField& f, const std::string& path) {
  write_grid_file(to_grid_file(f), path);
}

ScalarField read_grid(const std::string& path) { return field_from(read_grid_file(path)); }

namespace {

std::string grid_csv(const BoxDomain& d, const std::vector<std::string>& names,
                     const std::vector<double>& values) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& n : names) out << n << ',';
  out << "value\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Coord x = d.node(i);
    for (int a = 0; a < d.dim(); ++a) out << x[a] << ',';
    out << values[i] << '\n';
  }
  return out.str();
}

}  // namespace

std::string field_csv(const ScalarField& f, const std::vector<std::string>& coord_names) {
  std::vector<std::string> names = coord_names;
  if (names.empty()) {
    static const char* defaults[] = {"x", "y", "z"};
    for (int a = 0; a < f.dim(); ++a) names.emplace_back(defaults[a]);
  }
  require(static_cast<int>(names.size()) == f.dim(), "field_csv: one name per axis required");
  return grid_csv(f.domain(), names, f.values());
}

std::string table_csv(const TomogramTable& table) {
  return grid_csv(table.grid, table.axes, table.values);
}

}  // namespace tomo
