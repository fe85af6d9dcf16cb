#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "cmvkit/cmvkit.hpp"
#include "cmvkit/io.hpp"

namespace cmvkit::cli {

using io::json;

enum ExitCode : int { kOk = 0, kViolated = 1, kInputError = 2, kNumericalError = 3 };

struct GenOptions {
  std::uint64_t seed = 1;
  int order = 6;
  int k0 = 0;
  std::optional<int> radius;  // default 2N + 8
  double amax = 0.9;
};

struct ForwardOptions {
  std::string window = "-";
  int k0 = 0;
  int order = 6;
  bool csv = false;
};

struct ReconstructOptions {
  std::string data = "-";
  std::string route = "moments";
  std::optional<int> order;  // default: the most the data supports
  std::optional<std::string> reference;
  bool csv = false;
};

struct VerifyOptions {
  std::string w1;
  std::string w2;
  int k0 = 0;
  std::string kind = "half-right";
  int order = 6;
  double tol = 1e-10;
};

struct MatrixOptions {
  std::string window = "-";
};

inline double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Window on sites [first, k0 + radius] with first = k0 - radius rounded
/// down to even, unit cuts, and alpha uniform on the disk of radius amax.
inline VerblunskyWindow generate_window(const GenOptions& opt) {
  if (opt.order < 1) throw domain_error("gen: --order must be >= 1");
  if (!(opt.amax >= 0.0 && opt.amax < 1.0)) throw domain_error("gen: --amax must lie in [0, 1)");
  const int radius = opt.radius.value_or(2 * opt.order + 8);
  if (radius < required_radius(opt.order)) {
    throw domain_error("gen: --radius must be >= 2N + 6 = " +
                       std::to_string(required_radius(opt.order)));
  }
  int first = opt.k0 - radius;
  if (is_odd(first)) --first;
  const int kmin = first + 1;
  const int kmax = opt.k0 + radius;
  std::mt19937_64 rng(opt.seed);
  std::vector<complex> alpha(static_cast<std::size_t>(kmax - kmin + 1));
  for (auto& a : alpha) {
    const double r = opt.amax * std::sqrt(uniform53(rng));
    const double t = 2.0 * std::numbers::pi * uniform53(rng);
    a = std::polar(r, t);
  }
  return {kmin, std::move(alpha), complex(1.0), complex(1.0)};
}

inline json read_json(const std::string& path, std::istream& stdin_stream = std::cin) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << stdin_stream.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw io::format_error("\"" + path + "\": " + e.what());
  }
}

inline void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

inline void emit_series_csv(std::ostream& out, const std::string& name, const TaylorSeries& s) {
  for (int n = 0; n <= s.order(); ++n) {
    out << name << ',' << n << ',' << s[n].real() << ',' << s[n].imag() << '\n';
  }
}

inline int cmd_gen(const GenOptions& opt, std::ostream& out) {
  emit(out, io::to_json(generate_window(opt)));
  return kOk;
}

inline int cmd_forward(const ForwardOptions& opt, std::ostream& out, std::ostream& log) {
  const auto window = io::window_from_json(read_json(opt.window));
  if (opt.order < 1) throw domain_error("forward: --order must be >= 1");
  const auto data = forward(window, opt.k0, opt.order);
  if (data.radius_warning) {
    log << "warning: window radius around k0 is below 2N + 6; data may be truncation-affected\n";
  }
  if (!opt.csv) {
    emit(out, io::to_json(data));
    return kOk;
  }
  out << std::setprecision(17) << "series,n,re,im\n";
  emit_series_csv(out, "m_plus", data.plus.m);
  emit_series_csv(out, "m_minus", data.minus.m);
  emit_series_csv(out, "M_plus", data.plus.M);
  emit_series_csv(out, "M_minus", data.minus.M);
  emit_series_csv(out, "phi_plus", data.plus.phi);
  emit_series_csv(out, "phi_minus_inv", data.minus.phi);
  emit_series_csv(out, "g", data.green.g);
  emit_series_csv(out, "h", data.green.h);
  emit_series_csv(out, "g_prev", data.g_prev);
  return kOk;
}

inline int cmd_reconstruct(const ReconstructOptions& opt, std::ostream& out, std::ostream& log) {
  const auto data = io::forward_from_json(read_json(opt.data));
  const Route route = io::route_from_string(opt.route);
  const int count = opt.order.value_or(max_count(data, route));
  if (count < 1) throw domain_error("reconstruct: --order must be >= 1");
  auto report = reconstruct(data, route, count);
  if (opt.reference) {
    report.compare_with(io::window_from_json(read_json(*opt.reference)));
    log << "max residual " << report.max_residual() << '\n';
  }
  if (!opt.csv) {
    emit(out, io::to_json(report));
    return kOk;
  }
  out << std::setprecision(17) << "k,re,im\n";
  for (int k = report.recovered.kmin(); k <= report.recovered.kmax(); ++k) {
    out << k << ',' << report.recovered[k].real() << ',' << report.recovered[k].imag() << '\n';
  }
  return kOk;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& log) {
  const auto w1 = io::window_from_json(read_json(opt.w1));
  const auto w2 = io::window_from_json(read_json(opt.w2));
  if (opt.order < 0) throw domain_error("verify: --order must be >= 0");
  if (!(opt.tol > 0.0)) throw domain_error("verify: --tol must be positive");
  const auto report =
      uniqueness_check(w1, w2, opt.k0, io::kind_from_string(opt.kind), opt.order, opt.tol);
  if (!report.hypothesis_ok) log << "note: theorem hypothesis fails; implication holds vacuously\n";
  emit(out, io::to_json(report));
  return report.holds ? kOk : kViolated;
}

inline int cmd_matrix(const MatrixOptions& opt, std::ostream& out) {
  write_csv(out, build_full(io::window_from_json(read_json(opt.window))));
  return kOk;
}

/// Runs a command, mapping the error hierarchy onto exit codes.
template <class F>
int guarded(F&& f, std::ostream& log) {
  try {
    return f();
  } catch (const input_error& e) {
    log << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const numerical_error& e) {
    log << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace cmvkit::cli
