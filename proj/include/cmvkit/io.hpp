#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmvkit/coeffs.hpp"
#include "cmvkit/errors.hpp"
#include "cmvkit/inverse.hpp"
#include "cmvkit/moment_sequence.hpp"
#include "cmvkit/pipeline.hpp"
#include "cmvkit/series.hpp"

namespace cmvkit::io {

using json = nlohmann::json;

/// Malformed or schema-violating document.
class format_error : public input_error {
 public:
  using input_error::input_error;
};

inline json to_json(complex c) { return json::array({c.real(), c.imag()}); }

inline complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw format_error("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const std::vector<complex>& v) {
  json a = json::array();
  for (auto c : v) a.push_back(to_json(c));
  return a;
}

inline std::vector<complex> complex_array_from_json(const json& j) {
  if (!j.is_array()) throw format_error("expected an array of [re, im] pairs");
  std::vector<complex> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw format_error(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

inline int int_field(const json& j, const char* name) {
  const auto& f = field(j, name);
  if (!f.is_number_integer()) throw format_error(std::string("field \"") + name + "\" must be an integer");
  return f.get<int>();
}

// --- VerblunskyWindow: {"kmin","kmax","alpha","cut_left","cut_right"} -------

inline json to_json(const VerblunskyWindow& w) {
  auto cut = [](const std::optional<complex>& c) { return c ? to_json(*c) : json(nullptr); };
  return {{"kmin", w.kmin()},
          {"kmax", w.kmax()},
          {"alpha", to_json(std::vector<complex>(w.values().begin(), w.values().end()))},
          {"cut_left", cut(w.cut_left())},
          {"cut_right", cut(w.cut_right())}};
}

inline VerblunskyWindow window_from_json(const json& j) {
  const int kmin = int_field(j, "kmin");
  const int kmax = int_field(j, "kmax");
  auto alpha = complex_array_from_json(field(j, "alpha"));
  if (kmax < kmin || static_cast<int>(alpha.size()) != kmax - kmin + 1) {
    throw format_error("window: alpha must hold kmax - kmin + 1 entries");
  }
  auto cut = [&](const char* name) -> std::optional<complex> {
    if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
    return complex_from_json(j.at(name));
  };
  return {kmin, std::move(alpha), cut("cut_left"), cut("cut_right")};
}

// --- MomentSequence: {"order":N,"c":[[re,im],...]} --------------------------

inline json to_json(const MomentSequence& mu) {
  return {{"order", mu.order()}, {"c", to_json(mu.positive())}};
}

inline MomentSequence moments_from_json(const json& j) {
  const int order = int_field(j, "order");
  auto c = complex_array_from_json(field(j, "c"));
  if (static_cast<int>(c.size()) != order) throw format_error("moments: c must hold order entries");
  return MomentSequence(std::move(c));
}

// --- TaylorSeries: array of coefficients c_0..c_N ---------------------------

inline json to_json(const TaylorSeries& s) { return to_json(s.coeffs()); }

inline TaylorSeries series_from_json(const json& j) {
  auto c = complex_array_from_json(j);
  if (c.empty()) throw format_error("series must have at least one coefficient");
  return TaylorSeries(std::move(c));
}

// --- Reports ----------------------------------------------------------------

inline Route route_from_string(const std::string& s) {
  if (s == "moments") return Route::moments;
  if (s == "right_m" || s == "right-m") return Route::right_m;
  if (s == "left_M" || s == "left-M") return Route::left_M;
  if (s == "full_gh" || s == "full-gh") return Route::full_gh;
  if (s == "full_gg" || s == "full-gg") return Route::full_gg;
  throw format_error("unknown route \"" + s + "\"");
}

inline UniquenessKind kind_from_string(const std::string& s) {
  if (s == "half_right" || s == "half-right") return UniquenessKind::half_right;
  if (s == "half_left" || s == "half-left") return UniquenessKind::half_left;
  if (s == "full_gh" || s == "full-gh") return UniquenessKind::full_gh;
  if (s == "full_gg" || s == "full-gg") return UniquenessKind::full_gg;
  throw format_error("unknown kind \"" + s + "\"");
}

inline json to_json(const ReconstructionReport& r) {
  json j = {{"recovered", to_json(r.recovered)},
            {"route", to_string(r.route)},
            {"residuals", r.residuals ? to_json(*r.residuals) : json(nullptr)},
            {"notes", r.notes}};
  return j;
}

inline json to_json(const IndexInterval& i) { return json::array({i.lo, i.hi}); }

inline json to_json(const UniquenessReport& r) {
  return {{"kind", to_string(r.kind)},
          {"k0", r.k0},
          {"max_order", r.max_order},
          {"data_agreement_order", r.data_agreement_order},
          {"coefficient_window", to_json(r.coefficient_window)},
          {"coefficient_agreement_order", r.coefficient_agreement_order},
          {"implied_window", to_json(r.implied_window)},
          {"hypothesis_ok", r.hypothesis_ok},
          {"holds", r.holds}};
}

// --- Forward data document ---------------------------------------------------

inline json to_json(const ForwardData& f) {
  return {{"k0", f.k0},
          {"order", f.order},
          {"alpha_k0", to_json(f.alpha_k0)},
          {"radius_warning", f.radius_warning},
          {"moments_plus", to_json(f.moments_plus)},
          {"moments_minus", to_json(f.moments_minus)},
          {"m_plus", to_json(f.plus.m)},
          {"m_minus", to_json(f.minus.m)},
          {"M_plus", to_json(f.plus.M)},
          {"M_minus", to_json(f.minus.M)},
          {"phi_plus", to_json(f.plus.phi)},
          {"phi_minus_inv", to_json(f.minus.phi)},
          {"g", to_json(f.green.g)},
          {"h", to_json(f.green.h)},
          {"g_prev", to_json(f.g_prev)}};
}

inline ForwardData forward_from_json(const json& j) {
  ForwardData f;
  f.k0 = int_field(j, "k0");
  f.order = int_field(j, "order");
  f.alpha_k0 = complex_from_json(field(j, "alpha_k0"));
  f.radius_warning = j.value("radius_warning", false);
  f.moments_plus = moments_from_json(field(j, "moments_plus"));
  f.moments_minus = moments_from_json(field(j, "moments_minus"));
  f.plus = {series_from_json(field(j, "m_plus")), series_from_json(field(j, "M_plus")),
            series_from_json(field(j, "phi_plus")), Side::plus, f.k0};
  f.minus = {series_from_json(field(j, "m_minus")), series_from_json(field(j, "M_minus")),
             series_from_json(field(j, "phi_minus_inv")), Side::minus, f.k0};
  f.green = {series_from_json(field(j, "g")), series_from_json(field(j, "h")), f.k0};
  f.g_prev = series_from_json(field(j, "g_prev"));
  return f;
}

}  // namespace cmvkit::io
