#include "powereq/params.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "powereq/errors.hpp"

namespace powereq {

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& rule, double value) {
  throw ValidationError(field, field + " must " + rule + " (got " + format_double(value) + ")");
}

void check_finite(const std::string& field, double v) {
  if (!std::isfinite(v)) reject(field, "be finite", v);
}

void positive(const std::string& field, double v) {
  check_finite(field, v);
  if (!(v > 0.0)) reject(field, "be positive", v);
}

void non_negative(const std::string& field, double v) {
  check_finite(field, v);
  if (!(v >= 0.0)) reject(field, "be non-negative", v);
}

void in_closed_unit(const std::string& field, double v) {
  check_finite(field, v);
  if (!(v >= 0.0 && v <= 1.0)) reject(field, "lie in [0,1]", v);
}

void in_open_unit(const std::string& field, double v) {
  check_finite(field, v);
  if (!(v > 0.0 && v < 1.0)) reject(field, "lie in (0,1)", v);
}

#define PE_FIELD(sec, member, name, rate) \
  ParamField { sec, name, rate, [](ParamBundle& b) -> double& { return b.member; } }

const std::array<ParamField, 19> kFields{{
    PE_FIELD("technology", tech.sigma, "sigma", false),
    PE_FIELD("technology", tech.alpha, "alpha", false),
    PE_FIELD("technology", tech.a_k, "a_k", false),
    PE_FIELD("technology", tech.delta, "delta", true),
    PE_FIELD("technology", tech.q_rel, "q_rel", false),
    PE_FIELD("technology", tech.m, "m", false),
    PE_FIELD("technology", tech.g, "g", true),
    PE_FIELD("technology", tech.m_dot, "m_dot", true),
    PE_FIELD("preferences", pref.rho, "rho", true),
    PE_FIELD("preferences", pref.gamma_f, "gamma_f", false),
    PE_FIELD("preferences", pref.epsilon, "epsilon", false),
    PE_FIELD("matching", match.iota, "iota", false),
    PE_FIELD("matching", match.lambda0, "lambda0", true),
    PE_FIELD("matching", match.xi, "xi", false),
    PE_FIELD("institutions", inst.t_w, "t_w", false),
    PE_FIELD("institutions", inst.p_union, "p_union", false),
    PE_FIELD("institutions", inst.b, "b", false),
    PE_FIELD("institutions", inst.gamma_u, "gamma_u", false),
    PE_FIELD("institutions", inst.tau, "tau", false),
}};

#undef PE_FIELD

}  // namespace

std::span<const ParamField> param_fields() { return kFields; }

ModelParams validate_params(const ParamBundle& raw) {
  const auto& t = raw.tech;
  positive("sigma", t.sigma);
  positive("alpha", t.alpha);
  positive("a_k", t.a_k);
  in_open_unit("delta", t.delta);
  positive("q_rel", t.q_rel);
  in_closed_unit("m", t.m);
  check_finite("g", t.g);
  check_finite("m_dot", t.m_dot);

  const auto& p = raw.pref;
  positive("rho", p.rho);
  positive("gamma_f", p.gamma_f);
  positive("epsilon", p.epsilon);

  const auto& mt = raw.match;
  positive("iota", mt.iota);
  in_open_unit("lambda0", mt.lambda0);
  positive("xi", mt.xi);

  const auto& in = raw.inst;
  non_negative("t_w", in.t_w);
  in_closed_unit("p_union", in.p_union);
  non_negative("b", in.b);
  in_open_unit("gamma_u", in.gamma_u);
  non_negative("tau", in.tau);

  return ModelParams(raw);
}

void require_stationary(const ModelParams& p) {
  if (p.tech().m_dot != 0.0)
    reject("m_dot", "be 0 in a steady-state computation", p.tech().m_dot);
}

ParamBundle baseline_bundle() {
  ParamBundle b;
  b.tech.delta = annual_to_monthly(0.07);
  return b;
}

ModelParams baseline_params() { return validate_params(baseline_bundle()); }

double annual_to_monthly(double annual_rate) { return std::expm1(std::log1p(annual_rate) / 12.0); }

double monthly_to_annual(double monthly_rate) { return std::expm1(12.0 * std::log1p(monthly_rate)); }

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), end);
}

std::map<std::string, double> flatten(const ParamBundle& b) {
  std::map<std::string, double> out;
  ParamBundle copy = b;
  for (const auto& f : kFields) {
    std::string key = std::string(f.section) + "." + f.name + (f.is_rate ? "_monthly" : "");
    out[key] = f.ref(copy);
  }
  return out;
}

std::string to_key_value(const ModelParams& p) {
  std::ostringstream os;
  ParamBundle copy = p.bundle();
  for (const auto& f : kFields) {
    os << f.section << '.' << f.name << (f.is_rate ? "_monthly" : "") << '='
       << format_double(f.ref(copy)) << '\n';
  }
  return os.str();
}

}  // namespace powereq
