#include "glab/io.hpp"

#include <charconv>
#include <ostream>

#include "glab/errors.hpp"

namespace glab::io {

std::string num(const DDReal& v) { return to_string(v, kDigits); }

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(const std::optional<DDReal>& v) { return v ? num(*v) : std::string(); }

json jnum(const DDReal& v) { return num(v); }
json jnum(const std::optional<DDReal>& v) { return v ? json(num(*v)) : json(nullptr); }

DDReal to_dd(const json& v) {
  if (v.is_string()) return parse_ddreal(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw DomainError("expected a numeric field");
}

namespace {

std::optional<DDReal> opt_dd(const json& v) {
  if (v.is_null()) return std::nullopt;
  return to_dd(v);
}

std::string u(std::uint64_t v) { return std::to_string(v); }

}  // namespace

void csv_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

// ---- primes ----

const std::vector<std::string> kPrimeHeader = {"index", "prime"};
const std::vector<std::string> kGapHeader = {"p", "gap", "normalized"};

std::vector<std::string> gap_row(const GapSample& s) { return {u(s.p), u(s.gap), num(s.normalized)}; }

json to_json(const GapSample& s) { return {{"p", s.p}, {"gap", s.gap}, {"normalized", s.normalized}}; }

json to_json(const GapReport& r) {
  return {{"pairs", r.pairs},
          {"max_normalized", r.max_normalized},
          {"max_normalized_p", r.max_normalized_p},
          {"max_gap", r.max_gap},
          {"max_gap_p", r.max_gap_p}};
}

// ---- mertens ----

const std::vector<std::string> kRemainderHeader = {"k", "p", "theta", "S", "R", "Q", "scaledQ"};

std::vector<std::string> remainder_row(const mertens::RemainderSample& s) {
  return {u(s.k), u(s.p), num(s.theta), num(s.S), num(s.R), num(s.Q), num(s.scaled_Q)};
}

json to_json(const mertens::RemainderSample& s) {
  return {{"k", s.k},        {"p", s.p},         {"theta", jnum(s.theta)},       {"S", jnum(s.S)},
          {"R", jnum(s.R)},  {"Q", jnum(s.Q)},   {"scaled_Q", jnum(s.scaled_Q)}};
}

json to_json(const mertens::ScanSummary& s) {
  return {{"samples", s.samples},
          {"window_from", s.window_from},
          {"sup_scaled_Q", jnum(s.sup_scaled_Q)},
          {"sup_p", s.sup_p},
          {"inf_scaled_Q", jnum(s.inf_scaled_Q)},
          {"inf_p", s.inf_p},
          {"max_identity_error", jnum(s.max_identity_error)}};
}

const std::vector<std::string> kThetaHeader = {"x", "deviation", "c0Scaled", "rhScaled"};

std::vector<std::string> theta_row(const mertens::ThetaSample& s) {
  return {u(s.x), num(s.deviation), num(s.c0_scaled), num(s.rh_scaled)};
}

json to_json(const mertens::ThetaSample& s) {
  return {{"x", s.x},
          {"deviation", jnum(s.deviation)},
          {"c0_scaled", jnum(s.c0_scaled)},
          {"rh_scaled", jnum(s.rh_scaled)}};
}

json to_json(const mertens::ThetaSummary& s) {
  return {{"samples", s.samples},
          {"c0_sup", s.c0_sup},
          {"c0_sup_at", s.c0_sup_at},
          {"rh_sup", s.rh_sup},
          {"rh_sup_at", s.rh_sup_at}};
}

const std::vector<std::string> kTailHeader = {"x",        "lambda",   "Y",
                                              "estimate", "delta",    "X_lambda",
                                              "aboveThreshold", "J"};

std::vector<std::string> tail_row(const mertens::TailEstimate& t, const DDReal& J) {
  return {num(t.x),       num(t.lambda),     num(t.Y),
          num(t.estimate), num(t.delta),     num(t.X_lambda),
          t.above_threshold ? "1" : "0", num(J)};
}

json to_json(const mertens::TailEstimate& t, const DDReal& J) {
  return {{"x", t.x},
          {"lambda", t.lambda},
          {"Y", jnum(t.Y)},
          {"estimate", jnum(t.estimate)},
          {"delta", jnum(t.delta)},
          {"X_lambda", t.X_lambda},
          {"above_threshold", t.above_threshold},
          {"J", jnum(J)}};
}

const std::vector<std::string> kB1Header = {"B1", "headLimit", "head", "tail", "tailTerms", "truncationBound"};

std::vector<std::string> b1_row(const mertens::B1Result& b) {
  return {num(b.value), u(b.head_limit), num(b.head), num(b.tail), std::to_string(b.tail_terms),
          num(b.truncation_bound)};
}

json to_json(const mertens::B1Result& b) {
  return {{"B1", jnum(b.value)},
          {"head_limit", b.head_limit},
          {"head", jnum(b.head)},
          {"tail", jnum(b.tail)},
          {"tail_terms", b.tail_terms},
          {"truncation_bound", b.truncation_bound}};
}

const std::vector<std::string> kCriterionHeader = {"k",      "p",         "recipSum", "loglogTheta",
                                                   "B1Gap",  "scaledGap", "residual", "scaledResidual"};

std::vector<std::string> criterion_row(const mertens::CriterionRow& r) {
  return {u(r.k),           u(r.p),          num(r.recip_sum),         num(r.loglog_theta),
          num(r.B1_gap),    num(r.scaled_gap), num(r.identity_residual), num(r.scaled_residual)};
}

json to_json(const mertens::CriterionRow& r) {
  return {{"k", r.k},
          {"p", r.p},
          {"recip_sum", jnum(r.recip_sum)},
          {"loglog_theta", jnum(r.loglog_theta)},
          {"B1_gap", jnum(r.B1_gap)},
          {"scaled_gap", jnum(r.scaled_gap)},
          {"identity_residual", jnum(r.identity_residual)},
          {"scaled_residual", jnum(r.scaled_residual)}};
}

json to_json(const mertens::CriterionSummary& s) {
  return {{"rows", s.rows},
          {"B1", jnum(s.B1)},
          {"max_scaled_residual", jnum(s.max_scaled_residual)},
          {"sup_scaled_gap", jnum(s.sup_scaled_gap)},
          {"sup_p", s.sup_p}};
}

// ---- extremal ----

const std::vector<std::string> kCertificateHeader = {"k",  "p",  "r",  "nu",   "eta", "E",         "F",
                                                     "Sk", "Uk", "Vk", "logG", "gap", "scaledGap", "Ck"};

std::vector<std::string> certificate_row(const extremal::ExtremalCertificate& c) {
  return {u(c.k),     u(c.p_k),   std::to_string(c.r), u(c.nu),  num(c.eta),
          num(c.E),   num(c.F),   num(c.S_k),          num(c.U_k), num(c.V_k),
          num(c.log_G), num(c.gap), num(c.scaled_gap),  num(c.C_k)};
}

json to_json(const extremal::FactoredInteger& n) {
  json runs = json::array();
  for (const auto& r : n.runs()) runs.push_back({r.value, r.count});
  return {{"exponents", runs}, {"log_value", jnum(n.log_value())}};
}

extremal::FactoredInteger factored_from_json(const json& j) {
  std::vector<extremal::ExponentRun> runs;
  for (const auto& r : j.at("exponents")) {
    runs.push_back({r.at(0).get<std::uint32_t>(), r.at(1).get<std::uint64_t>()});
  }
  return extremal::FactoredInteger(std::move(runs), to_dd(j.at("log_value")));
}

namespace {

json checks_json(const extremal::Checks& c) {
  return {{"q_decreasing", c.q_decreasing},     {"exponents_monotone", c.exponents_monotone},
          {"alpha_nu", c.alpha_nu},             {"band_property", c.band_property},
          {"product_form", c.product_form},     {"eta_split", c.eta_split},
          {"log_G_split", c.log_G_split},       {"band_sum", c.band_sum},
          {"band_bracket", c.band_bracket},     {"r_band_bound", c.r_band_bound},
          {"F_bound", c.F_bound},               {"gap_positive", c.gap_positive}};
}

extremal::Checks checks_from_json(const json& j) {
  extremal::Checks c;
  c.q_decreasing = j.at("q_decreasing").get<bool>();
  c.exponents_monotone = j.at("exponents_monotone").get<bool>();
  c.alpha_nu = j.at("alpha_nu").get<bool>();
  c.band_property = j.at("band_property").get<bool>();
  c.product_form = j.at("product_form").get<bool>();
  c.eta_split = j.at("eta_split").get<bool>();
  c.log_G_split = j.at("log_G_split").get<bool>();
  c.band_sum = j.at("band_sum").get<bool>();
  c.band_bracket = j.at("band_bracket").get<bool>();
  c.r_band_bound = j.at("r_band_bound").get<bool>();
  c.F_bound = j.at("F_bound").get<bool>();
  c.gap_positive = j.at("gap_positive").get<bool>();
  return c;
}

}  // namespace

json to_json(const extremal::ExtremalCertificate& c) {
  json bands = json::array();
  for (const auto& b : c.U_bands) bands.push_back(jnum(b));
  return {{"k", c.k},
          {"p_k", c.p_k},
          {"r", c.r},
          {"q", c.q},
          {"nu", c.nu},
          {"log_H", jnum(c.log_H)},
          {"N_star", to_json(c.N_star)},
          {"eta", jnum(c.eta)},
          {"E", jnum(c.E)},
          {"F", jnum(c.F)},
          {"theta_pk", jnum(c.theta_pk)},
          {"loglog_theta", jnum(c.loglog_theta)},
          {"S_k", jnum(c.S_k)},
          {"U_k", jnum(c.U_k)},
          {"V_k", jnum(c.V_k)},
          {"U_bands", bands},
          {"log_G", jnum(c.log_G)},
          {"gap", jnum(c.gap)},
          {"scaled_gap", jnum(c.scaled_gap)},
          {"delta_k_estimate", jnum(c.delta_k)},
          {"C_k", jnum(c.C_k)},
          {"checks", checks_json(c.checks)}};
}

extremal::ExtremalCertificate certificate_from_json(const json& j) {
  extremal::ExtremalCertificate c;
  c.k = j.at("k").get<std::uint64_t>();
  c.p_k = j.at("p_k").get<std::uint64_t>();
  c.r = j.at("r").get<int>();
  c.q = j.at("q").get<std::vector<std::uint64_t>>();
  c.nu = j.at("nu").get<std::uint64_t>();
  c.log_H = to_dd(j.at("log_H"));
  c.N_star = factored_from_json(j.at("N_star"));
  c.eta = to_dd(j.at("eta"));
  c.E = to_dd(j.at("E"));
  c.F = to_dd(j.at("F"));
  c.theta_pk = to_dd(j.at("theta_pk"));
  c.loglog_theta = to_dd(j.at("loglog_theta"));
  c.S_k = to_dd(j.at("S_k"));
  c.U_k = to_dd(j.at("U_k"));
  c.V_k = to_dd(j.at("V_k"));
  for (const auto& b : j.at("U_bands")) c.U_bands.push_back(to_dd(b));
  c.log_G = to_dd(j.at("log_G"));
  c.gap = to_dd(j.at("gap"));
  c.scaled_gap = to_dd(j.at("scaled_gap"));
  c.delta_k = to_dd(j.at("delta_k_estimate"));
  c.C_k = to_dd(j.at("C_k"));
  c.checks = checks_from_json(j.at("checks"));
  return c;
}

json to_json(const extremal::BigintReport& b) {
  return {{"k", b.k},
          {"digits", b.digits},
          {"log_G_exact", jnum(b.log_G_exact)},
          {"log_G_pipeline", jnum(b.log_G_pipeline)},
          {"log_G_diff", b.log_G_diff},
          {"log_sigma_over_N_exact", jnum(b.log_sigma_over_N_exact)},
          {"S_minus_U", jnum(b.S_minus_U)},
          {"sigma_ratio_diff", b.sigma_ratio_diff},
          {"exponents_match", b.exponents_match},
          {"product_form_match", b.product_form_match},
          {"multiplicativity", b.multiplicativity},
          {"passed", b.passed()}};
}

json to_json(const extremal::LemmaScanSummary& s) {
  return {{"certificates", s.certificates},
          {"failed", s.failed},
          {"first_failure", s.first_failure},
          {"scaled_gap_min", s.scaled_gap_min},
          {"scaled_gap_max", s.scaled_gap_max},
          {"last_decade_mean_scaled_gap", s.last_decade_mean_scaled_gap},
          {"last_decade_mean_C_k", s.last_decade_mean_C_k},
          {"last_decade_count", s.last_decade_count},
          {"last_eta_ratio", s.last_eta_ratio},
          {"last_U1_ratio", s.last_U1_ratio},
          {"fitted_C2", s.fitted_C2}};
}

// ---- gronwall ----

json to_json(const gronwall::GronwallRecord& r) {
  return {{"N", r.N}, {"sigma", r.sigma.get_str()}, {"G", jnum(r.G)}, {"margin", jnum(r.margin)}};
}

json to_json(const gronwall::ViolatorReport& r) {
  json near = json::array();
  for (const auto& m : r.near_misses) near.push_back({{"N", m.N}, {"margin", m.margin}, {"sign", m.sign}});
  return {{"limit", r.limit},
          {"violators", r.violators},
          {"max_violator", r.max_violator},
          {"near_misses", near},
          {"escalations", r.escalations},
          {"violator_above_5040", r.violator_above_threshold()}};
}

gronwall::ViolatorReport violator_report_from_json(const json& j) {
  gronwall::ViolatorReport r;
  r.limit = j.at("limit").get<std::uint64_t>();
  r.violators = j.at("violators").get<std::vector<std::uint64_t>>();
  r.max_violator = j.at("max_violator").get<std::uint64_t>();
  for (const auto& m : j.at("near_misses")) {
    r.near_misses.push_back({m.at("N").get<std::uint64_t>(), m.at("margin").get<double>(), m.at("sign").get<int>()});
  }
  r.escalations = j.at("escalations").get<std::uint64_t>();
  return r;
}

const std::vector<std::string> kMaxGHeader = {"k",     "p",           "logG",   "seedLogG",
                                              "a_k",   "evaluations", "budget", "converged",
                                              "inWindow", "windowLo", "windowHi"};

std::vector<std::string> maxg_row(const gronwall::MaxGResult& m) {
  return {u(m.k),           u(m.p_k),           num(m.log_G),    num(m.seed_log_G),
          num(m.a_k),       u(m.evaluations),   u(m.budget),     m.converged ? "1" : "0",
          m.in_window ? "1" : "0", num(m.window_lo), num(m.window_hi)};
}

json to_json(const gronwall::MaxGResult& m) {
  return {{"k", m.k},
          {"p_k", m.p_k},
          {"best", to_json(m.best)},
          {"log_G", jnum(m.log_G)},
          {"seed_log_G", jnum(m.seed_log_G)},
          {"a_k", jnum(m.a_k)},
          {"evaluations", m.evaluations},
          {"budget", m.budget},
          {"converged", m.converged},
          {"window", {m.window_lo, m.window_hi}},
          {"in_window", m.in_window},
          {"search_space", "non-increasing exponents, capped at floor(log 2p_k / log p_j) + 2 (heuristic)"}};
}

}  // namespace glab::io
