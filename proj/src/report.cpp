#include "mgonal/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace mgonal::report {

json integer(i128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<i64>(v);
  return arith::to_string(v);
}

json decimal(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", v);
  return std::strtod(buf, nullptr);
}

std::string join(std::span<const i64> v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(sep);
    s += std::to_string(v[i]);
  }
  return s;
}

json coeffs(const MgonalForm& form) { return json(std::vector<i64>(form.coeffs().begin(), form.coeffs().end())); }

json witness(std::span<const i64> x) { return json(std::vector<i64>(x.begin(), x.end())); }

json local_verdict(const LocalVerdict& v) {
  json j{{"p", v.p}, {"represented", v.represented}, {"reason", to_string(v.reason)}};
  if (v.certificate) j["certificate"] = {{"x", v.certificate->x}, {"modulus", v.certificate->modulus}};
  return j;
}

json local_profile(const LocalProfile& profile) {
  json verdicts = json::array();
  for (const auto& v : profile.verdicts) verdicts.push_back(local_verdict(v));
  return {{"N", profile.N}, {"overall", profile.overall}, {"verdicts", verdicts}};
}

namespace {

json surd(const SurdBound& b) {
  json j{{"numerator", integer(b.q)}, {"radicand", integer(b.radicand)}, {"denominator", integer(b.den)},
         {"sign", b.sign}};
  j["approx"] = b.real() ? decimal(b.approx()) : json(nullptr);
  return j;
}

json node(const EscalatorNode& n) {
  json children = json::array();
  for (const auto& c : n.children) children.push_back(node(c));
  json j{{"coeffs", coeffs(n.form)}, {"children", children}};
  j["truant"] = n.truant ? json(*n.truant) : json(nullptr);
  j["universal_up_to"] = n.universal_up_to ? json(*n.universal_up_to) : json(nullptr);
  if (n.rule_divergence) j["rule_divergence"] = true;
  return j;
}

}  // namespace

json k_window(const KWindow& w, const MgonalForm& form, i64 A, i64 B) {
  return {{"m", form.m()},
          {"coeffs", coeffs(form)},
          {"A", A},
          {"B", B},
          {"C", w.C},
          {"status", to_string(w.status)},
          {"alpha_minus", surd(w.alpha_minus)},
          {"alpha_plus", surd(w.alpha_plus)},
          {"beta_minus", surd(w.beta_minus)},
          {"beta_plus", surd(w.beta_plus)}};
}

json tree(const EscalatorNode& root, i64 m, i64 bound) { return {{"m", m}, {"bound", bound}, {"node", node(root)}}; }

json exceptions(const ExceptionReport& rep) {
  json j{{"m", rep.form.m()}, {"coeffs", coeffs(rep.form)}, {"bound", rep.bound}, {"exceptions", rep.exceptions}};
  j["largest"] = rep.largest ? json(*rep.largest) : json(nullptr);
  return j;
}

json growth_summary(const GrowthProbe& probe) {
  json rows = json::array();
  for (const auto& r : probe.rows) {
    rows.push_back({{"m", r.m},
                    {"largest_exception", r.largest_exception ? json(*r.largest_exception) : json(nullptr)},
                    {"ratio", decimal(r.ratio)}});
  }
  return {{"coeffs", probe.coeffs},
          {"bound", probe.bound},
          {"fit_exponent", probe.fit_exponent ? decimal(*probe.fit_exponent) : json(nullptr)},
          {"fitted_constant", decimal(probe.fitted_constant)},
          {"rows", rows}};
}

void exceptions_csv(std::ostream& os, const ExceptionReport& rep) {
  os << "form,m,N\n";
  const auto form = join(rep.form.coeffs(), ';');
  for (i64 N : rep.exceptions) os << form << ',' << rep.form.m() << ',' << N << '\n';
}

void growth_csv(std::ostream& os, const GrowthProbe& probe) {
  os << "m,largest_exception,ratio\n";
  for (const auto& r : probe.rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", r.ratio);
    os << r.m << ',' << (r.largest_exception ? std::to_string(*r.largest_exception) : std::string()) << ',' << buf
       << '\n';
  }
  json summary{{"fit_exponent", probe.fit_exponent ? decimal(*probe.fit_exponent) : json(nullptr)},
               {"fitted_constant", decimal(probe.fitted_constant)}};
  os << summary.dump() << '\n';
}

}  // namespace mgonal::report
