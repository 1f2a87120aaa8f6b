#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thinspec/intervals.hpp"
#include "thinspec/jacobi.hpp"
#include "thinspec/spectrum.hpp"

namespace thinspec {

enum class ThinMode { OffDiagonal, Diagonal };

const char* to_string(ThinMode mode);
ThinMode thin_mode_from_string(const std::string& s);

inline constexpr std::size_t kDefaultPeriodCap = 4096;

struct ZeroExclusion {
  std::vector<double> a;  // period 2p
  double delta = 0.0;     // relative factor applied to the last entry
  double lambda0 = 0.0;
};

// Doubles the period and, if needed, shrinks the last entry so that 0 leaves the spectrum.
ZeroExclusion ensure_zero_excluded_detailed(std::span<const double> a, double eps);
std::vector<double> ensure_zero_excluded(std::span<const double> a, double eps);

// Additive perturbations of a_p, a_{p-1}, ... with shrinking steps until no gap is closed.
std::vector<double> open_all_gaps(std::span<const double> a, double budget);
// Same sweep on the diagonal entries.
PeriodicJacobi open_all_gaps_diagonal(const PeriodicJacobi& J, double budget);

enum class FamilyKRule { Claim, MinimalVerified };

// Off-diagonal mode: members Lambda^{k/K} a'', k = -K..K.
// Diagonal mode: members b'' + k h, k = 0..ell-1.
struct ScalingFamily {
  ThinMode mode = ThinMode::OffDiagonal;
  std::vector<PeriodicJacobi> members;
  std::vector<double> factors;  // scale factors or shifts, one per member
  double Lambda = 1.0;
  int K = 0;
  int K_claim = 0;
  double shift_step = 0.0;
  std::size_t base_period = 0;
  double max_distance = 0.0;  // sup distance of members from the centre sequence
  bool within_budget = false;

  std::size_t ell() const { return members.size(); }
  IntervalUnion intersection() const;
};

ScalingFamily scaling_family(std::span<const double> a2, double eps,
                             FamilyKRule rule = FamilyKRule::Claim, int max_K = 64);

// Shift family for the diagonal variant; ell >= 2 and step h > 0 given explicitly.
ScalingFamily shift_family(const PeriodicJacobi& J2, double h, std::size_t ell, double eps);
// Rule-based shift family: h = min(smallest open gap, largest band)/2, ell = ceil(band/h)+1.
ScalingFamily shift_family_default(const PeriodicJacobi& J2, double eps);

struct EtaGrid {
  std::size_t points = 10000;
  bool refine = true;
};

struct EtaResult {
  double eta = 0.0;
  double energy = 0.0;
  double radius = 0.0;
  std::size_t points = 0;
};

// max over members of the Lyapunov exponent at E
double family_max_lyapunov(const ScalingFamily& family, double E);
double family_radius(const ScalingFamily& family);
EtaResult compute_eta(const ScalingFamily& family, const EtaGrid& grid = {});

struct ThinDiagnostics {
  double eta = 0.0;
  double eta_energy = 0.0;
  std::size_t ell = 0;
  long N = 0;
  long N_tilde = 0;
  long N_prime = 0;
  long min_N = 0;
  double measured_leb = 0.0;
  double predicted_bound = 0.0;
  std::vector<long> s_offsets;
  double Lambda = 1.0;
  int K = 0;
  int K_claim = 0;
  double shift_step = 0.0;
  double leb_centre = 0.0;  // Leb of the spectrum of the family centre a''
  double lambda0_doubled = 0.0;
  double zero_exclusion_delta = 0.0;
  double pattern_amplitude = 0.0;
  std::uint64_t seed = 0;
  std::size_t base_period = 0;
  double sup_distance = 0.0;
  std::size_t candidates_tried = 0;
};

struct ThinResult {
  ThinMode mode = ThinMode::OffDiagonal;
  PeriodicJacobi tilde = PeriodicJacobi::off_diagonal({1.0});
  BandStructure bands;
  ThinDiagnostics diag;
};

struct ThinOptions {
  std::size_t seeds = 32;
  std::size_t period_cap = kDefaultPeriodCap;
  int max_K = 64;
  std::size_t max_shift_count = 16;
  EtaGrid eta_grid;
};

// Everything in the construction that does not depend on N.
struct ThinPlan {
  ThinMode mode = ThinMode::OffDiagonal;
  double eps = 0.0;
  PeriodicJacobi base = PeriodicJacobi::off_diagonal({1.0});
  PeriodicJacobi centre = PeriodicJacobi::off_diagonal({1.0});
  BandStructure centre_bands;
  ScalingFamily family;
  EtaResult eta;
  ThinDiagnostics diag;

  // Smallest N with N_tilde >= 1.
  long min_N() const;
};

ThinPlan plan_thin(const PeriodicJacobi& J, double eps, ThinMode mode, const ThinOptions& opt = {});

ThinResult assemble_thin(const PeriodicJacobi& J, const ScalingFamily& family, long N, ThinMode mode,
                         double eta = 0.0);
ThinResult assemble_thin(const ThinPlan& plan, long N);

ThinResult thin_spectrum(const PeriodicJacobi& J, double eps, long N, ThinMode mode,
                         const ThinOptions& opt = {});

struct ChainStage {
  PeriodicJacobi op = PeriodicJacobi::off_diagonal({1.0});
  std::size_t period = 0;
  double eps_n = 0.0;
  double mu_n = 0.0;
  double mu_target = 0.0;  // exp(-sqrt(p_n))
  bool target_met = false;
  double distance_to_previous = 0.0;
  ThinDiagnostics thin;
  IntervalUnion cover;  // closed mu_n/2 neighbourhood of the stage spectrum
};

struct GordonRecord {
  int n = 0;
  std::size_t p = 0;
  double k = 0.0;
  double max_difference = 0.0;
  bool passed = false;
};

struct ApproximantChain {
  ThinMode mode = ThinMode::OffDiagonal;
  double eps = 0.0;
  std::size_t period_cap = kDefaultPeriodCap;
  std::vector<ChainStage> stages;
  std::vector<GordonRecord> gordon;
  bool partial = false;
  std::string stop_reason;
  std::vector<std::string> log;

  // (p_n, 2 mu_n) for stages with 2 mu_n < 1
  std::vector<CoverSample> covers() const;
};

// eps_n = min(eps_{n-1}/2, mu_{n-1}/8, (1/2) n^{-p_{n-1}})
double next_chain_eps(double prev_eps, double prev_mu, int n, std::size_t prev_period);

struct ChainOptions {
  std::size_t period_cap = kDefaultPeriodCap;
  ThinOptions thin;
};

ApproximantChain build_limit_periodic(const PeriodicJacobi& J, double eps, int stages, ThinMode mode,
                                      const ChainOptions& opt = {});

// Window holds a_n for n = 1-p .. 2p (at least 3p values).
bool gordon_check(std::span<const double> window, std::size_t p, double k);
double gordon_max_difference(std::span<const double> window, std::size_t p);
// a_n (or b_n when diagonal) of the periodic sequence for n = 1-p .. 2p
std::vector<double> gordon_window(const PeriodicJacobi& seq, std::size_t p, bool diagonal = false);

}  // namespace thinspec
