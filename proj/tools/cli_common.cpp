#include "cli_common.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace tomo::cli {

namespace {

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt(v.get<double>());
  fail(ErrorCode::invalid_argument, "config key '" + key + "' has an unsupported value type");
}

}  // namespace

void add_config_option(CLI::App* sub) {
  sub->add_option("--config", "JSON file with option values; command-line flags take precedence");
}

void apply_config(CLI::App* sub) {
  const CLI::Option* cfg = sub->get_option_no_throw("--config");
  if (cfg == nullptr || cfg->count() == 0) return;
  const std::string path = cfg->as<std::string>();
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config file " + path, ErrorCode::io_failure);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_argument, "config file " + path + ": " + e.what());
  }
  require(j.is_object(), "config file " + path + " must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    require(opt != nullptr, "unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    std::vector<std::string> values;
    if (it->is_array()) {
      std::string joined;
      for (const auto& v : *it) joined += (joined.empty() ? "" : ",") + json_scalar(v, key);
      values.push_back(joined);
    } else {
      values.push_back(json_scalar(*it, key));
    }
    opt->clear();
    opt->add_result(values);
    opt->run_callback();
  }
}

GridFile read_input_grid(const std::string& path) {
  if (path.empty() || path == "-") {
    std::cin.sync_with_stdio(false);
    return read_grid_file(std::cin);
  }
  return read_grid_file(path);
}

void write_output_grid(const GridFile& file, const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer(std::ios::binary);
    write_grid_file(file, buffer);
    const std::string bytes = buffer.str();
    std::cout.write(bytes.data(), std::streamsize(bytes.size()));
    std::cout.flush();
    require(static_cast<bool>(std::cout), "write to stdout failed", ErrorCode::io_failure);
    return;
  }
  write_grid_file(file, path);
}

std::string read_input_text(const std::string& path) {
  if (path.empty() || path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path, ErrorCode::io_failure);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_output_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  write_text_atomic(path, text);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      require(used == item.size() || item.find_first_not_of(" \t", used) == std::string::npos,
              what + ": cannot parse '" + item + "'");
      require(std::isfinite(v), what + ": non-finite value '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      fail(ErrorCode::invalid_argument, what + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

BoxDomain parse_box(const std::string& box, const std::string& shape) {
  const auto b = parse_list(box, "--box");
  require(!b.empty() && b.size() % 2 == 0 && b.size() <= 6,
          "--box must list lo,hi pairs for 1 to 3 axes");
  const std::size_t dim = b.size() / 2;
  const auto s = parse_list(shape, "--shape");
  require(s.size() == 1 || s.size() == dim, "--shape must give one count or one per axis");
  std::vector<double> lo, hi;
  std::vector<std::size_t> n;
  for (std::size_t a = 0; a < dim; ++a) {
    lo.push_back(b[2 * a]);
    hi.push_back(b[2 * a + 1]);
    const double c = s.size() == 1 ? s[0] : s[a];
    require(c >= 2 && c == std::floor(c) && c <= 1e5, "--shape entries must be integers >= 2");
    n.push_back(std::size_t(c));
  }
  return BoxDomain(lo, hi, n);
}

std::string box_to_string(const BoxDomain& d) {
  std::string s;
  for (int a = 0; a < d.dim(); ++a)
    s += (a ? "," : "") + fmt(d.lo()[a]) + "," + fmt(d.hi()[a]);
  return s;
}

std::string shape_to_string(const BoxDomain& d) {
  std::string s;
  for (int a = 0; a < d.dim(); ++a) s += (a ? "," : "") + std::to_string(d.shape()[a]);
  return s;
}

OperatorMatrix load_state(const std::string& spec, int dim, std::uint64_t seed) {
  require(dim >= 1, "state dimension must be positive");
  auto basis = [&](int k) {
    require(k >= 0 && k < dim, "state index out of range for dimension " + std::to_string(dim));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(k) = 1.0;
    return projector(v);
  };
  if (spec == "vacuum" || spec == "up") return basis(0);
  if (spec == "down") return basis(dim - 1);
  if (spec.rfind("fock:", 0) == 0) {
    const auto k = parse_list(spec.substr(5), "fock state");
    require(k.size() == 1 && k[0] == std::floor(k[0]), "fock:N needs an integer N");
    return basis(int(k[0]));
  }
  if (spec.rfind("coherent:", 0) == 0) {
    const auto z = parse_list(spec.substr(9), "coherent state");
    require(z.size() == 2, "coherent:U,V needs two numbers");
    Diagnostics diag;
    const FockSpace space(dim - 1);
    Eigen::VectorXcd v = coherent_vector({z[0], z[1]}, space, &diag);
    print_warnings(diag);
    v.normalize();
    return projector(v);
  }
  if (spec == "mixed") return OperatorMatrix::Identity(dim, dim) / double(dim);
  if (spec == "random") {
    std::mt19937_64 rng(seed);
    return random_density(dim, rng);
  }
  OperatorMatrix m = matrix_from_json(read_input_text(spec));
  if (m.rows() != dim) {
    std::ostringstream msg;
    msg << "state " << spec << " has dimension " << m.rows() << ", expected " << dim;
    fail(ErrorCode::invalid_argument, msg.str());
  }
  return m;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_warnings(const Diagnostics& diag) {
  for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace tomo::cli
