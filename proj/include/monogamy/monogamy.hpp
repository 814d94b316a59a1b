#pragma once

#include "monogamy/roof.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace monogamy {

class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TripleMeasure { Tangle, Eof };

std::string_view to_string(TripleMeasure m);
TripleMeasure parse_triple_measure(std::string_view name);

/// One state's (E_A(BC), E_AB, E_AC) triple.
struct MonogamyRecord {
  double e_abc = 0.0;
  double e_ab = 0.0;
  double e_ac = 0.0;
  double residual = 0.0;  // e_abc - e_ab - e_ac
  TripleMeasure measure = TripleMeasure::Tangle;
  std::uint64_t state_seed = 0;
  std::string tag;  // named-state tag; empty for sampled states

  static MonogamyRecord make(double e_abc, double e_ab, double e_ac, TripleMeasure measure);
};

inline constexpr double kMonotonicityTol = 1e-8;
inline constexpr double kMixedResidualAlarm = -1e-6;

/// Tangle triple of a pure three-qubit state (C² across A|BC, AB and AC).
MonogamyRecord ckw_residual(const PureState& state);

/// Tangle triple of a mixed three-qubit state; e_abc is a convex-roof upper
/// bound, so the residual is evidence rather than proof.
MonogamyRecord ckw_mixed(const DensityMatrix& rho, const RoofConfig& config = {});

/// Entanglement-of-formation triple of a pure three-qubit state.
MonogamyRecord triple_eof(const PureState& state);

MonogamyRecord make_record(TripleMeasure measure, const PureState& state);

/// Records for Haar-random pure three-qubit states seeded seed, seed+1, ...
std::vector<MonogamyRecord> sample_records(TripleMeasure measure, std::size_t count, std::uint64_t seed);

/// Records with max(e_ab, e_ac) > e_abc + tol.
std::vector<MonogamyRecord> monotonicity_audit(const std::vector<MonogamyRecord>& records,
                                               double tol = kMonotonicityTol);

// ---- α-power monogamy ---------------------------------------------------

inline constexpr double kAlphaLower = 1e-3;
inline constexpr double kDefaultAlphaCap = 512.0;
inline constexpr double kAlphaTol = 1e-9;
inline constexpr double kAlphaCheckTol = 1e-9;

/// (x^α + y^α)^(1/α), evaluated without overflow.
double power_mean(double x, double y, double alpha);

enum class AlphaStatus {
  Finite,    // minimal α found in the bracket
  Skipped,   // one side is zero; any α > 0 works
  Infinite,  // no finite α: max side reaches e_abc while the other side is positive
  Capped,    // still violated at the cap
};

struct RecordAlpha {
  AlphaStatus status = AlphaStatus::Finite;
  double alpha = 0.0;
};

struct AlphaFitReport {
  double alpha_min = 0.0;
  bool infinite = false;
  std::vector<RecordAlpha> per_record;
  std::size_t sample_size = 0;
  std::size_t skipped = 0;
  std::size_t capped = 0;
  std::size_t infinite_count = 0;
  std::size_t validation_sample_size = 0;
  std::size_t validation_violations = 0;
};

RecordAlpha record_alpha(const MonogamyRecord& record, double alpha_cap = kDefaultAlphaCap);

AlphaFitReport alpha_fit(const std::vector<MonogamyRecord>& records, double alpha_cap = kDefaultAlphaCap);

/// Records where power_mean(e_ab, e_ac, α) > e_abc + tol.
std::size_t count_alpha_violations(const std::vector<MonogamyRecord>& records, double alpha,
                                   double tol = kAlphaCheckTol);

/// Fills the validation fields of `report` from a fresh sample.
void revalidate(AlphaFitReport& report, const std::vector<MonogamyRecord>& fresh);

// ---- equality-based monogamy ----------------------------------------------

/// Records with e_abc - max(e_ab, e_ac) < epsilon while min(e_ab, e_ac) > delta.
std::vector<MonogamyRecord> equality_audit(const std::vector<MonogamyRecord>& records, double epsilon, double delta);

// ---- dimension-dependent bounds --------------------------------------------

inline constexpr double kBoundTol = 1e-9;

struct SubsystemDims {
  std::size_t a = 2, b = 2, c = 2;
};

struct BoundCheck {
  bool pass = true;
  double slack = 0.0;  // e_abc - max(branch_ab, branch_ac)
};

/// e_abc ≥ max(e_ab + k_C e_ac^p, e_ac + k_B e_ab^p) with
/// k_C = c / (d_A d_C log2(min(d_A, d_C))^p) and k_B likewise.
BoundCheck bound_check(double e_abc, double e_ab, double e_ac, SubsystemDims dims, double c, int exponent);

/// Exponent-8 bound for entanglement-of-formation records.
BoundCheck eof_bound(const MonogamyRecord& record, SubsystemDims dims, double c);

/// Exponent-4 bound on externally supplied values.
BoundCheck ree_infinity_bound(double e_abc, double e_ab, double e_ac, SubsystemDims dims, double c);

struct BoundAuditReport {
  double c_empirical = 0.0;
  bool constrained = false;  // false when every branch was excluded
  std::size_t sample_size = 0;
  std::size_t excluded_branches = 0;
  std::size_t violations = 0;
  double c_checked = 0.0;
  SubsystemDims dims;
  int exponent = 8;
};

/// Largest c consistent with every record (both branches; a branch whose
/// power term vanishes is excluded). Violations are counted at `c_check`
/// (defaults to the estimate itself).
BoundAuditReport empirical_c(const std::vector<MonogamyRecord>& records, SubsystemDims dims, int exponent,
                             std::optional<double> c_check = std::nullopt);

std::size_t count_bound_violations(const std::vector<MonogamyRecord>& records, SubsystemDims dims, double c,
                                   int exponent);

/// Piecewise bound: max(e_ab, e_ac) unless both exceed 4/5 e_abc, where it is
/// e_ab + e_ac - 4/5 e_abc.
double piecewise_f(double e_ab, double e_ac, double e_abc);

}  // namespace monogamy
