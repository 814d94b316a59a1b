#include "monogamy/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace monogamy {

std::string_view to_string(TripleMeasure m) {
  return m == TripleMeasure::Tangle ? "tangle" : "eof";
}

TripleMeasure parse_triple_measure(std::string_view name) {
  if (name == "tangle") return TripleMeasure::Tangle;
  if (name == "eof") return TripleMeasure::Eof;
  throw AuditError("unknown measure '" + std::string(name) + "' (expected tangle or eof)");
}

MonogamyRecord MonogamyRecord::make(double e_abc, double e_ab, double e_ac, TripleMeasure measure) {
  MonogamyRecord r;
  r.e_abc = e_abc;
  r.e_ab = e_ab;
  r.e_ac = e_ac;
  r.residual = e_abc - e_ab - e_ac;
  r.measure = measure;
  return r;
}

namespace {

const Dims kThreeQubits{2, 2, 2};
constexpr std::size_t kKeepAB[] = {0, 1};
constexpr std::size_t kKeepAC[] = {0, 2};

void require_three_qubits(const Dims& dims, const char* op) {
  if (dims != kThreeQubits) throw AuditError(std::string(op) + ": expected three-qubit dims (2,2,2)");
}

struct PairStates {
  DensityMatrix ab;
  DensityMatrix ac;
};

PairStates reduced_pairs(const ComplexMatrix& full) {
  return {DensityMatrix(partial_trace(full, kThreeQubits, kKeepAB), {2, 2}),
          DensityMatrix(partial_trace(full, kThreeQubits, kKeepAC), {2, 2})};
}

ComplexMatrix projector(const PureState& state) {
  const ComplexVector& a = state.amplitudes();
  return a * a.adjoint();
}

double squared(double x) { return x * x; }

}  // namespace

MonogamyRecord ckw_residual(const PureState& state) {
  require_three_qubits(state.dims(), "ckw_residual");
  const auto pairs = reduced_pairs(projector(state));
  return MonogamyRecord::make(tangle_pure(state, Cut::first_vs_rest()).value, squared(concurrence(pairs.ab).value),
                              squared(concurrence(pairs.ac).value), TripleMeasure::Tangle);
}

MonogamyRecord ckw_mixed(const DensityMatrix& rho, const RoofConfig& config) {
  require_three_qubits(rho.dims(), "ckw_mixed");
  const auto pairs = reduced_pairs(rho.matrix());
  const RoofResult roof = convex_roof(PureFunctional::Tangle, rho, config);
  return MonogamyRecord::make(roof.value, squared(concurrence(pairs.ab).value), squared(concurrence(pairs.ac).value),
                              TripleMeasure::Tangle);
}

MonogamyRecord triple_eof(const PureState& state) {
  require_three_qubits(state.dims(), "triple_eof");
  const auto pairs = reduced_pairs(projector(state));
  return MonogamyRecord::make(entropy_of_entanglement(state, Cut::first_vs_rest()).value,
                              eof_closed_form(pairs.ab).value, eof_closed_form(pairs.ac).value, TripleMeasure::Eof);
}

MonogamyRecord make_record(TripleMeasure measure, const PureState& state) {
  return measure == TripleMeasure::Tangle ? ckw_residual(state) : triple_eof(state);
}

std::vector<MonogamyRecord> sample_records(TripleMeasure measure, std::size_t count, std::uint64_t seed) {
  std::vector<MonogamyRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    MonogamyRecord r = make_record(measure, haar_random_pure(kThreeQubits, s));
    r.state_seed = s;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MonogamyRecord> monotonicity_audit(const std::vector<MonogamyRecord>& records, double tol) {
  std::vector<MonogamyRecord> out;
  for (const auto& r : records)
    if (std::max(r.e_ab, r.e_ac) > r.e_abc + tol) out.push_back(r);
  return out;
}

double power_mean(double x, double y, double alpha) {
  const double hi = std::max(x, y), lo = std::min(x, y);
  if (hi <= 0.0) return 0.0;
  return hi * std::pow(1.0 + std::pow(lo / hi, alpha), 1.0 / alpha);
}

RecordAlpha record_alpha(const MonogamyRecord& record, double alpha_cap) {
  const double x = record.e_ab, y = record.e_ac, z = record.e_abc;
  if (std::min(x, y) <= 0.0) return {AlphaStatus::Skipped, 0.0};
  if (std::max(x, y) >= z - kAlphaTol) return {AlphaStatus::Infinite, std::numeric_limits<double>::infinity()};
  if (power_mean(x, y, kAlphaLower) <= z) return {AlphaStatus::Finite, kAlphaLower};
  if (power_mean(x, y, alpha_cap) > z) return {AlphaStatus::Capped, alpha_cap};
  // power_mean is nonincreasing in α: lo violates, hi satisfies.
  double lo = kAlphaLower, hi = alpha_cap;
  while (hi - lo > kAlphaTol) {
    const double mid = 0.5 * (lo + hi);
    (power_mean(x, y, mid) <= z ? hi : lo) = mid;
  }
  return {AlphaStatus::Finite, hi};
}

AlphaFitReport alpha_fit(const std::vector<MonogamyRecord>& records, double alpha_cap) {
  if (records.empty()) throw AuditError("alpha_fit: empty record list");
  if (!(alpha_cap > kAlphaLower)) throw AuditError("alpha_fit: alpha cap must exceed the lower bracket");
  AlphaFitReport report;
  report.sample_size = records.size();
  report.alpha_min = kAlphaLower;
  report.per_record.reserve(records.size());
  for (const auto& r : records) {
    const RecordAlpha a = record_alpha(r, alpha_cap);
    report.per_record.push_back(a);
    switch (a.status) {
      case AlphaStatus::Skipped: ++report.skipped; break;
      case AlphaStatus::Infinite: ++report.infinite_count; break;
      case AlphaStatus::Capped: ++report.capped; [[fallthrough]];
      case AlphaStatus::Finite: report.alpha_min = std::max(report.alpha_min, a.alpha); break;
    }
  }
  report.infinite = report.infinite_count > 0;
  return report;
}

std::size_t count_alpha_violations(const std::vector<MonogamyRecord>& records, double alpha, double tol) {
  return static_cast<std::size_t>(std::ranges::count_if(
      records, [&](const MonogamyRecord& r) { return power_mean(r.e_ab, r.e_ac, alpha) > r.e_abc + tol; }));
}

void revalidate(AlphaFitReport& report, const std::vector<MonogamyRecord>& fresh) {
  report.validation_sample_size = fresh.size();
  report.validation_violations = count_alpha_violations(fresh, report.alpha_min);
}

std::vector<MonogamyRecord> equality_audit(const std::vector<MonogamyRecord>& records, double epsilon, double delta) {
  std::vector<MonogamyRecord> out;
  for (const auto& r : records)
    if (r.e_abc - std::max(r.e_ab, r.e_ac) < epsilon && std::min(r.e_ab, r.e_ac) > delta) out.push_back(r);
  return out;
}

namespace {

double bound_coefficient(double c, std::size_t d_a, std::size_t d_other, int exponent) {
  const double log_min = std::log2(static_cast<double>(std::min(d_a, d_other)));
  return c / (static_cast<double>(d_a * d_other) * std::pow(log_min, exponent));
}

void validate_dims(SubsystemDims dims) {
  if (dims.a < 2 || dims.b < 2 || dims.c < 2) throw AuditError("bound: every subsystem dimension must be >= 2");
}

}  // namespace

BoundCheck bound_check(double e_abc, double e_ab, double e_ac, SubsystemDims dims, double c, int exponent) {
  validate_dims(dims);
  const double branch_ab = e_ab + bound_coefficient(c, dims.a, dims.c, exponent) * std::pow(e_ac, exponent);
  const double branch_ac = e_ac + bound_coefficient(c, dims.a, dims.b, exponent) * std::pow(e_ab, exponent);
  const double slack = e_abc - std::max(branch_ab, branch_ac);
  return {slack >= -kBoundTol, slack};
}

BoundCheck eof_bound(const MonogamyRecord& record, SubsystemDims dims, double c) {
  if (record.measure != TripleMeasure::Eof) throw AuditError("eof_bound: record must carry the eof measure");
  return bound_check(record.e_abc, record.e_ab, record.e_ac, dims, c, 8);
}

BoundCheck ree_infinity_bound(double e_abc, double e_ab, double e_ac, SubsystemDims dims, double c) {
  if (e_abc < 0.0 || e_ab < 0.0 || e_ac < 0.0 || c < 0.0)
    throw AuditError("ree_infinity_bound: inputs must be nonnegative");
  return bound_check(e_abc, e_ab, e_ac, dims, c, 4);
}

std::size_t count_bound_violations(const std::vector<MonogamyRecord>& records, SubsystemDims dims, double c,
                                   int exponent) {
  return static_cast<std::size_t>(std::ranges::count_if(records, [&](const MonogamyRecord& r) {
    return !bound_check(r.e_abc, r.e_ab, r.e_ac, dims, c, exponent).pass;
  }));
}

BoundAuditReport empirical_c(const std::vector<MonogamyRecord>& records, SubsystemDims dims, int exponent,
                             std::optional<double> c_check) {
  if (records.empty()) throw AuditError("empirical_c: empty sample");
  if (exponent != 8 && exponent != 4) throw AuditError("empirical_c: exponent must be 8 or 4");
  validate_dims(dims);
  BoundAuditReport report;
  report.sample_size = records.size();
  report.dims = dims;
  report.exponent = exponent;

  const double unit_ac = bound_coefficient(1.0, dims.a, dims.c, exponent);
  const double unit_ab = bound_coefficient(1.0, dims.a, dims.b, exponent);
  double c_min = std::numeric_limits<double>::infinity();
  auto branch = [&](double gap, double other, double unit) {
    const double term = unit * std::pow(other, exponent);
    if (!(term > 0.0)) {
      ++report.excluded_branches;
      return;
    }
    c_min = std::min(c_min, gap / term);
  };
  for (const auto& r : records) {
    branch(r.e_abc - r.e_ab, r.e_ac, unit_ac);
    branch(r.e_abc - r.e_ac, r.e_ab, unit_ab);
  }
  report.constrained = std::isfinite(c_min);
  report.c_empirical = report.constrained ? std::max(c_min, 0.0) : 0.0;
  report.c_checked = c_check.value_or(report.c_empirical);
  report.violations = count_bound_violations(records, dims, report.c_checked, exponent);
  return report;
}

double piecewise_f(double e_ab, double e_ac, double e_abc) {
  if (e_ab < 0.0 || e_ac < 0.0 || e_ab > e_abc || e_ac > e_abc)
    throw AuditError("piecewise_f: need 0 <= e_ab, e_ac <= e_abc");
  const double knee = 0.8 * e_abc;
  if (e_ab > knee && e_ac > knee) return e_ab + e_ac - knee;
  return std::max(e_ab, e_ac);
}

}  // namespace monogamy
