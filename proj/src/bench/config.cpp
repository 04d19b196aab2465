#include <charconv>
#include <cmath>
#include <sstream>

#include "sgm/bench.hpp"
#include "sgm/errors.hpp"
#include "sgm/io.hpp"
#include "sgm/synth.hpp"

namespace sgm::bench {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double to_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw IoError("bad number '" + text + "' for " + what);
  }
  return value;
}

std::uint64_t to_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw IoError("bad integer '" + text + "' for " + what);
  }
  return value;
}

bool to_bool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw IoError("bad boolean '" + text + "' for " + what);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <class T, class Fn>
std::string join(const std::vector<T>& values, Fn&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

std::string method_name(WitnessMethod m) {
  switch (m) {
    case WitnessMethod::automatic: return "auto";
    case WitnessMethod::product_lists: return "lists";
    case WitnessMethod::product_bitsets: return "bitsets";
    case WitnessMethod::explore: return "explore";
  }
  return "auto";
}

WitnessMethod parse_method(const std::string& text) {
  if (text == "auto") return WitnessMethod::automatic;
  if (text == "lists") return WitnessMethod::product_lists;
  if (text == "bitsets") return WitnessMethod::product_bitsets;
  if (text == "explore") return WitnessMethod::explore;
  throw IoError("unknown witness method '" + text + "'");
}

}  // namespace

double PSpec::at(std::size_t n) const {
  if (kind == Kind::constant) return value;
  return std::pow(static_cast<double>(n), -value);
}

std::string PSpec::to_string() const {
  if (kind == Kind::constant) return format_double(value);
  return "n^-" + format_double(value);
}

PSpec PSpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("n^", 0) != 0) return {Kind::constant, to_double(text, "p")};
  std::string exponent = text.substr(2);
  if (!exponent.empty() && exponent.front() == '(' && exponent.back() == ')') {
    exponent = exponent.substr(1, exponent.size() - 2);
  }
  if (exponent.empty() || exponent.front() != '-') {
    throw IoError("p must look like n^-gamma, got '" + text + "'");
  }
  exponent = exponent.substr(1);
  const auto slash = exponent.find('/');
  double gamma = 0.0;
  if (slash == std::string::npos) {
    gamma = to_double(exponent, "p exponent");
  } else {
    const double num = to_double(exponent.substr(0, slash), "p exponent");
    const double den = to_double(exponent.substr(slash + 1), "p exponent");
    if (den == 0.0) throw IoError("zero denominator in '" + text + "'");
    gamma = num / den;
  }
  return {Kind::power, gamma};
}

std::string rescale_name(Rescale r) {
  switch (r) {
    case Rescale::raw: return "raw";
    case Rescale::one_hop_dense: return "one_hop_dense";
    case Rescale::one_hop_sparse: return "one_hop_sparse";
    case Rescale::two_hop_t1: return "two_hop_t1";
    case Rescale::two_hop_t2: return "two_hop_t2";
    case Rescale::two_hop_t3: return "two_hop_t3";
  }
  return "raw";
}

Rescale parse_rescale(const std::string& text) {
  for (Rescale r : {Rescale::raw, Rescale::one_hop_dense, Rescale::one_hop_sparse,
                    Rescale::two_hop_t1, Rescale::two_hop_t2, Rescale::two_hop_t3}) {
    if (rescale_name(r) == text) return r;
  }
  throw UsageError("unknown rescale '" + text + "'");
}

double rescale_factor(Rescale r, double n, double p) {
  const double ln = std::log(n);
  switch (r) {
    case Rescale::raw: return 1.0;
    case Rescale::one_hop_dense: return std::sqrt(ln / n);
    case Rescale::one_hop_sparse: return ln / (n * p);
    case Rescale::two_hop_t1: return ln / (n * n * p * p);
    case Rescale::two_hop_t2: return std::sqrt(ln / n);
    case Rescale::two_hop_t3: return std::sqrt(n * p * p * p * ln);
  }
  return 1.0;
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw UsageError("config needs at least one n");
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0, 1]");
  if (betas.empty() == x_values.empty()) {
    throw UsageError("config needs exactly one of a beta grid or an x grid");
  }
  for (double b : betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw DomainError("beta grid must lie in [0, 1]");
  }
  for (double x : x_values) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("x grid must be finite and >= 0");
  }
  if (algorithm.kind == AlgorithmKind::noisy_seeds && algorithm.r < 2) {
    throw DomainError("noisy_seeds needs r >= 2");
  }
  if (algorithm.kind != AlgorithmKind::noisy_seeds && (algorithm.j < 1 || algorithm.j > kMaxHops)) {
    throw DomainError("hop count out of range");
  }
  for (std::size_t n : n_values) {
    if (n < 2) throw DomainError("every n must be >= 2");
    const double p_n = p.at(n);
    if (!(p_n >= 0.0 && p_n <= 1.0)) throw DomainError("p(n) outside [0, 1] at n = " + std::to_string(n));
    for (const auto& [index, beta] : beta_grid(*this, n)) {
      ModelParams{n, p_n, s, beta}.validate();
    }
  }
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "algorithm = " << algorithm.name() << "\n";
  out << "iterations = " << iterations << "\n";
  out << "n = " << join(n_values, [](std::size_t n) { return std::to_string(n); }) << "\n";
  out << "p = " << p.to_string() << "\n";
  out << "s = " << format_double(s) << "\n";
  out << "beta = " << join(betas, format_double) << "\n";
  out << "x = " << join(x_values, format_double) << "\n";
  out << "beta_rescale = " << rescale_name(beta_rescale) << "\n";
  out << "trials = " << trials << "\n";
  out << "seed = " << seed << "\n";
  out << "method = " << method_name(method) << "\n";
  out << "complete_random = " << (complete_random ? "true" : "false") << "\n";
  out << "timing = " << (timing ? "true" : "false") << "\n";
  out << "csv = " << csv_path << "\n";
  out << "svg = " << svg_path << "\n";
  return out.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw IoError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    try {
      if (key == "algorithm") {
        c.algorithm = Algorithm::parse(value);
      } else if (key == "iterations") {
        c.iterations = static_cast<unsigned>(to_u64(value, key));
      } else if (key == "n") {
        c.n_values.clear();
        for (const auto& item : split_list(value)) c.n_values.push_back(to_u64(item, key));
      } else if (key == "p") {
        c.p = PSpec::parse(value);
      } else if (key == "s") {
        c.s = to_double(value, key);
      } else if (key == "beta") {
        c.betas.clear();
        for (const auto& item : split_list(value)) c.betas.push_back(to_double(item, key));
      } else if (key == "x") {
        c.x_values.clear();
        for (const auto& item : split_list(value)) c.x_values.push_back(to_double(item, key));
      } else if (key == "beta_rescale") {
        c.beta_rescale = parse_rescale(value);
      } else if (key == "trials") {
        c.trials = to_u64(value, key);
      } else if (key == "seed") {
        c.seed = to_u64(value, key);
      } else if (key == "method") {
        c.method = parse_method(value);
      } else if (key == "complete_random") {
        c.complete_random = to_bool(value, key);
      } else if (key == "timing") {
        c.timing = to_bool(value, key);
      } else if (key == "csv") {
        c.csv_path = value;
      } else if (key == "svg") {
        c.svg_path = value;
      } else {
        throw IoError("unknown key '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw IoError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) { return parse(read_file(path)); }

}  // namespace sgm::bench
