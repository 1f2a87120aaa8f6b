#include "thinspec/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "thinspec/errors.hpp"

namespace thinspec {

const char* to_string(ThinMode mode) { return mode == ThinMode::Diagonal ? "diag" : "offdiag"; }

ThinMode thin_mode_from_string(const std::string& s) {
  if (s == "offdiag" || s == "off-diagonal") return ThinMode::OffDiagonal;
  if (s == "diag" || s == "diagonal") return ThinMode::Diagonal;
  throw DomainError("unknown mode '" + s + "' (expected diag or offdiag)");
}

namespace {

void require_positive_eps(double eps, const char* what) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError(std::string(what) + " must be positive");
}

std::vector<double> doubled(std::span<const double> a) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

template <class F>
auto at_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const TooSmallNError&) {
    throw;
  } catch (const DomainError& e) {
    throw DomainError(std::string(stage) + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(stage) + ": " + e.what());
  }
}

IntervalUnion scaled_intersection(const IntervalUnion& x, std::span<const double> factors,
                                  bool additive) {
  IntervalUnion acc = additive ? shift(x, factors[0]) : scale(x, factors[0]);
  for (std::size_t i = 1; i < factors.size() && !acc.empty(); ++i)
    acc = intersect(acc, additive ? shift(x, factors[i]) : scale(x, factors[i]));
  return acc;
}

std::vector<double> shift_offsets(double h, std::size_t ell) {
  std::vector<double> f;
  for (std::size_t k = 0; k < ell; ++k) f.push_back(static_cast<double>(k) * h);
  return f;
}

std::vector<double> power_factors(double Lambda, int K) {
  std::vector<double> f;
  for (int k = -K; k <= K; ++k) f.push_back(std::pow(Lambda, static_cast<double>(k) / K));
  return f;
}

std::vector<double> uniform_pattern(std::uint64_t seed, std::size_t q) {
  std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(q), 0x7a11u};
  std::mt19937_64 rng(ss);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> out(q);
  for (auto& x : out) x = u(rng);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- zero exclusion

ZeroExclusion ensure_zero_excluded_detailed(std::span<const double> a, double eps) {
  require_positive_eps(eps, "eps");
  PeriodicJacobi::off_diagonal(std::vector<double>(a.begin(), a.end()));  // validates a
  ZeroExclusion out;
  out.a = doubled(a);
  out.lambda0 = lambda0(PeriodicJacobi::off_diagonal(out.a));
  if (out.lambda0 > 0.0) return out;

  const double last = out.a.back();
  std::optional<ZeroExclusion> fallback;
  double delta = eps / 6.0;
  for (int t = 0; t < 64; ++t, delta *= 0.5) {
    if (delta * last >= eps / 3.0) continue;
    std::vector<double> trial = out.a;
    trial.back() = last * (1.0 - delta);
    double l0 = lambda0(PeriodicJacobi::off_diagonal(trial));
    if (l0 > 0.5 * delta) return {trial, delta, l0};
    if (l0 > 0.0 && !fallback) fallback = ZeroExclusion{trial, delta, l0};
  }
  if (fallback) return *fallback;
  throw RetryExhaustedError("could not move 0 out of the spectrum");
}

std::vector<double> ensure_zero_excluded(std::span<const double> a, double eps) {
  return ensure_zero_excluded_detailed(a, eps).a;
}

// ---------------------------------------------------------------- gap opening

std::vector<double> open_all_gaps(std::span<const double> a, double budget) {
  require_positive_eps(budget, "gap-opening budget");
  std::vector<double> x(a.begin(), a.end());
  BandStructure bs = band_structure(PeriodicJacobi::off_diagonal(x));
  if (bs.closed_gap_count() == 0) return x;
  const bool excluded = lambda0(bs) > 0.0;
  const std::size_t p = x.size();
  double delta = budget;
  for (std::size_t t = 0; t < 32; ++t) {
    delta *= 0.5;
    std::size_t s = p - 1 - (t % p);
    std::vector<double> trial = x;
    trial[s] += delta;
    BandStructure tb = band_structure(PeriodicJacobi::off_diagonal(trial));
    if (excluded && lambda0(tb) == 0.0) continue;
    x = std::move(trial);
    if (tb.closed_gap_count() == 0) return x;
  }
  throw RetryExhaustedError("closed gaps persist after 32 perturbation attempts");
}

PeriodicJacobi open_all_gaps_diagonal(const PeriodicJacobi& J, double budget) {
  require_positive_eps(budget, "gap-opening budget");
  if (band_structure(J).closed_gap_count() == 0) return J;
  std::vector<double> b = J.b_vec();
  const std::size_t p = b.size();
  double delta = budget;
  for (std::size_t t = 0; t < 32; ++t) {
    delta *= 0.5;
    b[p - 1 - (t % p)] += delta;
    PeriodicJacobi trial(J.a_vec(), b);
    if (band_structure(trial).closed_gap_count() == 0) return trial;
  }
  throw RetryExhaustedError("closed gaps persist after 32 diagonal perturbation attempts");
}

// ---------------------------------------------------------------- families

IntervalUnion ScalingFamily::intersection() const {
  if (members.empty()) return {};
  IntervalUnion acc = band_structure(members[0]).spectrum();
  for (std::size_t i = 1; i < members.size() && !acc.empty(); ++i)
    acc = intersect(acc, band_structure(members[i]).spectrum());
  return acc;
}

namespace {

ScalingFamily scaling_family_from(std::vector<double> centre, const BandStructure& bs, double eps,
                                  FamilyKRule rule, int max_K) {
  require_positive_eps(eps, "eps");
  if (lambda0(bs) == 0.0) throw PreconditionError("0 lies in the spectrum of the family centre");
  if (bs.closed_gap_count() > 0) throw PreconditionError("family centre has closed gaps");

  std::vector<Interval> pos;
  for (const auto& b : bs.bands)
    if (b.lo > 0.0) pos.push_back(b);
  ScalingFamily fam;
  fam.mode = ThinMode::OffDiagonal;
  fam.base_period = centre.size();
  for (const auto& b : pos) fam.Lambda = std::max(fam.Lambda, b.hi / b.lo);

  if (pos.size() <= 1) {
    fam.K_claim = 1;
  } else {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n + 1 < pos.size(); ++n) r = std::min(r, pos[n + 1].lo / pos[n].hi);
    double est = std::log(fam.Lambda) / std::log(r);
    if (!std::isfinite(est) || est > 1e6)
      throw NumericalError("scaling family would need more than 1e6 members per side");
    int K = std::max(1, static_cast<int>(std::floor(est)));
    while (std::pow(fam.Lambda, 1.0 / K) >= r) ++K;
    while (K > 1 && std::pow(fam.Lambda, 1.0 / (K - 1)) < r) --K;
    fam.K_claim = K;
  }

  IntervalUnion sigma = bs.spectrum();
  fam.K = fam.K_claim;
  if (rule == FamilyKRule::MinimalVerified) {
    for (int K = 1; K <= std::min(fam.K_claim, max_K); ++K) {
      auto f = power_factors(fam.Lambda, K);
      if (scaled_intersection(sigma, f, false).empty()) {
        fam.K = K;
        break;
      }
    }
  }
  if (fam.K > 4096) throw NumericalError("scaling family too large (K = " + std::to_string(fam.K) + ")");
  fam.factors = power_factors(fam.Lambda, fam.K);
  if (!scaled_intersection(sigma, fam.factors, false).empty()) {
    std::ostringstream os;
    os << "family spectra intersect (Lambda = " << fam.Lambda << ", K = " << fam.K << ")";
    throw ConsistencyError(os.str());
  }
  for (double f : fam.factors) {
    std::vector<double> m = centre;
    for (auto& x : m) x *= f;
    fam.max_distance = std::max(fam.max_distance, sup_distance(m, centre));
    fam.members.push_back(PeriodicJacobi::off_diagonal(std::move(m)));
  }
  fam.within_budget = fam.max_distance < eps / 3.0;
  return fam;
}

ScalingFamily shift_family_from(const PeriodicJacobi& J2, const IntervalUnion& sigma, double h,
                                std::size_t ell, double eps) {
  require_positive_eps(eps, "eps");
  require_positive_eps(h, "shift step");
  if (ell < 2) throw DomainError("shift family needs at least two members");
  ScalingFamily fam;
  fam.mode = ThinMode::Diagonal;
  fam.base_period = J2.period();
  fam.shift_step = h;
  fam.factors = shift_offsets(h, ell);
  if (!scaled_intersection(sigma, fam.factors, true).empty()) {
    std::ostringstream os;
    os << "shifted spectra intersect (h = " << h << ", ell = " << ell << ")";
    throw ConsistencyError(os.str());
  }
  for (double t : fam.factors) {
    std::vector<double> b = J2.b_vec();
    for (auto& x : b) x += t;
    fam.members.emplace_back(J2.a_vec(), std::move(b));
  }
  fam.max_distance = fam.factors.back();
  fam.within_budget = fam.max_distance < eps / 3.0;
  return fam;
}

ScalingFamily shift_family_default_from(const PeriodicJacobi& J2, const BandStructure& bs, double eps) {
  double beta = bs.max_band_length();
  double gmin = std::numeric_limits<double>::infinity();
  for (const auto& g : bs.gaps) {
    if (g.closed) throw PreconditionError("shift family needs all gaps open");
    gmin = std::min(gmin, g.length());
  }
  double h = 0.5 * std::min(gmin, beta);
  std::size_t ell = static_cast<std::size_t>(std::ceil(beta / h)) + 1;
  IntervalUnion sigma = bs.spectrum();
  for (int refine = 0; refine < 8; ++refine, ++ell) {
    try {
      return shift_family_from(J2, sigma, h, ell, eps);
    } catch (const ConsistencyError&) {
    }
  }
  throw ConsistencyError("no empty-intersection shift family from the default rule");
}

}  // namespace

ScalingFamily scaling_family(std::span<const double> a2, double eps, FamilyKRule rule, int max_K) {
  std::vector<double> centre(a2.begin(), a2.end());
  BandStructure bs = band_structure(PeriodicJacobi::off_diagonal(centre));
  return scaling_family_from(std::move(centre), bs, eps, rule, max_K);
}

ScalingFamily shift_family(const PeriodicJacobi& J2, double h, std::size_t ell, double eps) {
  return shift_family_from(J2, band_structure(J2).spectrum(), h, ell, eps);
}

ScalingFamily shift_family_default(const PeriodicJacobi& J2, double eps) {
  return shift_family_default_from(J2, band_structure(J2), eps);
}

// ---------------------------------------------------------------- eta

double family_max_lyapunov(const ScalingFamily& family, double E) {
  double m = 0.0;
  for (const auto& J : family.members) m = std::max(m, lyapunov(J, E));
  return m;
}

double family_radius(const ScalingFamily& family) {
  double amax = 0.0, bmax = 0.0;
  for (const auto& J : family.members) {
    amax = std::max(amax, J.a_max());
    bmax = std::max(bmax, J.b_sup());
  }
  return 2.0 * amax + bmax + 1.0;
}

EtaResult compute_eta(const ScalingFamily& family, const EtaGrid& grid) {
  if (family.members.empty()) throw DomainError("empty family");
  if (grid.points < 2) throw DomainError("eta grid needs at least two points");
  EtaResult r;
  r.radius = family_radius(family);
  r.points = grid.points;
  const double step = 2.0 * r.radius / static_cast<double>(grid.points - 1);
  r.eta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.points; ++i) {
    double E = -r.radius + step * static_cast<double>(i);
    double v = family_max_lyapunov(family, E);
    if (v < r.eta) {
      r.eta = v;
      r.energy = E;
    }
  }
  if (grid.refine) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = r.energy - step, hi = r.energy + step;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = family_max_lyapunov(family, x1), f2 = family_max_lyapunov(family, x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = family_max_lyapunov(family, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = family_max_lyapunov(family, x2);
      }
    }
    double E = 0.5 * (lo + hi);
    double v = family_max_lyapunov(family, E);
    if (v < r.eta) {
      r.eta = v;
      r.energy = E;
    }
  }
  if (!(r.eta > 1e-12)) {
    std::ostringstream os;
    os << "eta = " << r.eta << " at E = " << r.energy << ": family spectra share a point";
    throw DegenerateFamilyError(os.str());
  }
  return r;
}

// ---------------------------------------------------------------- assembly

ThinResult assemble_thin(const PeriodicJacobi& J, const ScalingFamily& family, long N, ThinMode mode,
                         double eta) {
  const long p = static_cast<long>(J.period());
  const long q = static_cast<long>(family.base_period);
  const long ell = static_cast<long>(family.ell());
  if (ell < 1) throw DomainError("empty family");
  if (q <= 0 || q % (2 * p) != 0)
    throw DomainError("family base period must be a multiple of 2p");
  if (N < 1) throw DomainError("N must be positive");
  const long Nprime = q / (2 * p);
  const long min_N = 4 * ell * Nprime;
  const long Ntilde = N / (2 * ell * Nprime) - 1;
  if (Ntilde < 1) throw TooSmallNError(N, min_N);

  const long P = N * p;
  ThinResult r;
  r.mode = mode;
  auto& d = r.diag;
  d.N = N;
  d.N_tilde = Ntilde;
  d.N_prime = Nprime;
  d.min_N = min_N;
  d.ell = static_cast<std::size_t>(ell);
  d.base_period = static_cast<std::size_t>(q);
  d.eta = eta;
  for (long j = 0; j <= ell; ++j) d.s_offsets.push_back(j * (Ntilde + 1) * q);

  std::vector<double> a(static_cast<std::size_t>(P)), b(static_cast<std::size_t>(P));
  for (long n = 1; n <= P; ++n) {
    const PeriodicJacobi* src = &J;
    if (n <= d.s_offsets.back()) src = &family.members[static_cast<std::size_t>((n - 1) / ((Ntilde + 1) * q))];
    a[static_cast<std::size_t>(n - 1)] = src->a_at(n);
    b[static_cast<std::size_t>(n - 1)] = src->b_at(n);
  }
  r.tilde = PeriodicJacobi(std::move(a), std::move(b));
  PeriodicJacobi ref = J.repeated(static_cast<std::size_t>(N));
  d.sup_distance = std::max(sup_distance(r.tilde.a(), ref.a()), sup_distance(r.tilde.b(), ref.b()));
  r.bands = band_structure(r.tilde);
  d.measured_leb = r.bands.measure;
  if (eta > 0.0)
    d.predicted_bound = static_cast<double>(P) *
                        std::exp(-static_cast<double>(P) * eta / (4.0 * static_cast<double>(ell)));
  return r;
}

long ThinPlan::min_N() const {
  return 4 * static_cast<long>(family.ell()) *
         static_cast<long>(family.base_period / (2 * base.period()));
}

ThinResult assemble_thin(const ThinPlan& plan, long N) {
  ThinResult r = at_stage("assemble", [&] {
    return assemble_thin(plan.base, plan.family, N, plan.mode, plan.eta.eta);
  });
  ThinDiagnostics d = plan.diag;
  d.N = r.diag.N;
  d.N_tilde = r.diag.N_tilde;
  d.N_prime = r.diag.N_prime;
  d.min_N = r.diag.min_N;
  d.ell = r.diag.ell;
  d.s_offsets = r.diag.s_offsets;
  d.measured_leb = r.diag.measured_leb;
  d.predicted_bound = r.diag.predicted_bound;
  d.sup_distance = r.diag.sup_distance;
  r.diag = std::move(d);
  if (!(r.diag.sup_distance < plan.eps)) {
    std::ostringstream os;
    os << "assembled sequence is " << r.diag.sup_distance << " from the input (eps " << plan.eps << ")";
    throw ConsistencyError(os.str());
  }
  return r;
}

// ---------------------------------------------------------------- planning

namespace {

struct Candidate {
  PeriodicJacobi centre;
  ScalingFamily family;
  std::uint64_t seed;
  std::size_t score;
};

std::optional<ScalingFamily> offdiag_family(const std::vector<double>& a2, const BandStructure& bs,
                                            double eps, const ThinOptions& opt) {
  try {
    if (!(lambda0(bs) > 1e-6) || bs.closed_gap_count() > 0) return std::nullopt;
    double Lambda = 1.0;
    for (const auto& b : bs.bands)
      if (b.lo > 0.0) Lambda = std::max(Lambda, b.hi / b.lo);
    double amax = *std::max_element(a2.begin(), a2.end());
    if (!(amax * (Lambda - 1.0) < eps / 3.0)) return std::nullopt;
    ScalingFamily fam = scaling_family_from(a2, bs, eps, FamilyKRule::MinimalVerified, opt.max_K);
    if (!fam.within_budget || fam.K > opt.max_K) return std::nullopt;
    return fam;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<ScalingFamily> diag_family(const PeriodicJacobi& J2, const BandStructure& bs, double eps,
                                         const ThinOptions& opt) {
  if (bs.closed_gap_count() > 0) return std::nullopt;
  IntervalUnion sigma = bs.spectrum();
  double beta = bs.max_band_length();
  for (std::size_t ell = 2; ell <= opt.max_shift_count; ++ell) {
    for (int j = 0; j < 8; ++j) {
      double h = beta * (1.0 + j / 8.0) / static_cast<double>(ell - 1);
      if (!(h * static_cast<double>(ell - 1) < eps / 3.0)) break;
      // demand a visible separation, not emptiness by rounding
      if (!scaled_intersection(epsilon_neighborhood(sigma, 0.05 * h), shift_offsets(h, ell), true).empty())
        continue;
      try {
        return shift_family_from(J2, sigma, h, ell, eps);
      } catch (const ConsistencyError&) {
      }
    }
  }
  try {
    ScalingFamily fam = shift_family_default_from(J2, bs, eps);
    if (fam.within_budget && fam.ell() <= opt.max_shift_count) return fam;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

ThinPlan plan_thin(const PeriodicJacobi& J, double eps, ThinMode mode, const ThinOptions& opt) {
  require_positive_eps(eps, "eps");
  if (opt.seeds == 0) throw DomainError("at least one pattern seed is required");
  if (mode == ThinMode::OffDiagonal && !J.is_off_diagonal())
    throw PreconditionError("off-diagonal mode requires b = 0");

  ThinPlan plan;
  plan.mode = mode;
  plan.eps = eps;
  plan.base = J;
  const std::size_t p = J.period();
  const double band = eps / 3.0;

  std::vector<double> a1;
  if (mode == ThinMode::OffDiagonal) {
    ZeroExclusion ze = at_stage("zero exclusion", [&] { return ensure_zero_excluded_detailed(J.a(), eps); });
    a1 = ze.a;
    plan.diag.zero_exclusion_delta = ze.delta;
    plan.diag.lambda0_doubled = ze.lambda0;
  }

  std::optional<Candidate> best;
  std::size_t tried = 0;
  for (std::size_t Np = 1;; ++Np) {
    const std::size_t q = 2 * Np * p;
    if (opt.period_cap > 0 && 6 * q > opt.period_cap) break;
    if (best && 3 * q >= best->score) break;
    for (std::uint64_t seed = 0; seed < opt.seeds; ++seed) {
      ++tried;
      auto u = uniform_pattern(seed, q);
      std::optional<Candidate> c;
      if (mode == ThinMode::OffDiagonal) {
        double amax = *std::max_element(a1.begin(), a1.end());
        double rho = 0.9 * band / amax;
        std::vector<double> a2(q);
        for (std::size_t n = 0; n < q; ++n) a2[n] = a1[n % a1.size()] * (1.0 + rho * u[n]);
        BandStructure bs = band_structure(PeriodicJacobi::off_diagonal(a2));
        if (bs.closed_gap_count() > 0) {
          try {
            a2 = open_all_gaps(a2, 0.1 * band);
          } catch (const Error&) {
            continue;
          }
          bs = band_structure(PeriodicJacobi::off_diagonal(a2));
        }
        if (auto fam = offdiag_family(a2, bs, eps, opt))
          c = Candidate{PeriodicJacobi::off_diagonal(a2), std::move(*fam), seed, 0};
      } else {
        PeriodicJacobi J1 = J.repeated(2 * Np);
        std::vector<double> b2 = J1.b_vec();
        for (std::size_t n = 0; n < q; ++n) b2[n] += 0.9 * band * u[n];
        PeriodicJacobi J2(J1.a_vec(), b2);
        BandStructure bs = band_structure(J2);
        if (bs.closed_gap_count() > 0) {
          try {
            J2 = open_all_gaps_diagonal(J2, 0.1 * band);
          } catch (const Error&) {
            continue;
          }
          bs = band_structure(J2);
        }
        if (auto fam = diag_family(J2, bs, eps, opt)) c = Candidate{J2, std::move(*fam), seed, 0};
      }
      if (!c) continue;
      c->score = c->family.ell() * q;
      if (opt.period_cap > 0 && 2 * c->score > opt.period_cap) continue;
      if (!best || c->score < best->score) best = std::move(c);
    }
  }
  if (!best) {
    std::ostringstream os;
    os << "family search: no admissible family within the period cap " << opt.period_cap
       << " after " << tried << " candidates";
    throw RetryExhaustedError(os.str());
  }

  plan.centre = best->centre;
  plan.centre_bands = band_structure(plan.centre);
  plan.family = std::move(best->family);
  plan.eta = at_stage("eta", [&] { return compute_eta(plan.family, opt.eta_grid); });

  auto& d = plan.diag;
  d.eta = plan.eta.eta;
  d.eta_energy = plan.eta.energy;
  d.ell = plan.family.ell();
  d.Lambda = plan.family.Lambda;
  d.K = plan.family.K;
  d.K_claim = plan.family.K_claim;
  d.shift_step = plan.family.shift_step;
  d.leb_centre = plan.centre_bands.measure;
  d.seed = best->seed;
  d.base_period = plan.family.base_period;
  d.N_prime = static_cast<long>(plan.family.base_period / (2 * p));
  d.min_N = plan.min_N();
  d.pattern_amplitude = mode == ThinMode::OffDiagonal
                            ? 0.9 * band / *std::max_element(a1.begin(), a1.end())
                            : 0.9 * band;
  d.candidates_tried = tried;
  return plan;
}

ThinResult thin_spectrum(const PeriodicJacobi& J, double eps, long N, ThinMode mode,
                         const ThinOptions& opt) {
  if (N < 1) throw DomainError("N must be positive");
  ThinPlan plan = plan_thin(J, eps, mode, opt);
  if (N < plan.min_N()) throw TooSmallNError(N, plan.min_N());
  return assemble_thin(plan, N);
}

// ---------------------------------------------------------------- chains

double next_chain_eps(double prev_eps, double prev_mu, int n, std::size_t prev_period) {
  double tail = 0.5 * std::pow(static_cast<double>(n), -static_cast<double>(prev_period));
  return std::min({prev_eps / 2.0, prev_mu / 8.0, tail});
}

std::vector<CoverSample> ApproximantChain::covers() const {
  std::vector<CoverSample> out;
  for (const auto& s : stages) {
    double l = -std::log(2.0 * s.mu_n);
    if (s.mu_n > 0.0 && l > 0.0)
      out.push_back(CoverSample::from_logs(std::log(static_cast<double>(s.period)), l));
  }
  return out;
}

ApproximantChain build_limit_periodic(const PeriodicJacobi& J, double eps, int stages, ThinMode mode,
                                      const ChainOptions& opt) {
  require_positive_eps(eps, "eps");
  if (stages < 1) throw DomainError("stages must be at least 1");
  if (opt.period_cap < 1) throw DomainError("period cap must be positive");
  ApproximantChain chain;
  chain.mode = mode;
  chain.eps = eps;
  chain.period_cap = opt.period_cap;

  PeriodicJacobi current = J;
  double eps_n = eps / 4.0;
  ThinOptions topt = opt.thin;
  topt.period_cap = opt.period_cap;
  auto stop = [&](std::string why) {
    chain.partial = true;
    chain.stop_reason = std::move(why);
    chain.log.push_back(chain.stop_reason);
  };

  for (int n = 1; n <= stages; ++n) {
    std::ostringstream head;
    head << "stage " << n << ": ";
    if (!(eps_n > 0.0)) {
      stop(head.str() + "eps_n underflows double precision");
      break;
    }
    const std::size_t p_prev = current.period();
    std::optional<ThinPlan> plan;
    try {
      plan = plan_thin(current, eps_n, mode, topt);
    } catch (const Error& e) {
      stop(head.str() + e.what());
      break;
    }
    std::optional<ThinResult> last;
    bool met = false;
    for (long N = plan->min_N(); static_cast<std::size_t>(N) * p_prev <= opt.period_cap; N *= 2) {
      ThinResult r = assemble_thin(*plan, N);
      std::size_t P = r.tilde.period();
      double target = std::exp(-std::sqrt(static_cast<double>(P)));
      std::ostringstream os;
      os << head.str() << "N=" << N << " period=" << P << " Leb=" << r.diag.measured_leb
         << " target=" << target;
      chain.log.push_back(os.str());
      met = r.diag.measured_leb <= target;
      last = std::move(r);
      if (met) break;
    }
    if (!last) {
      std::ostringstream os;
      os << head.str() << "minimum period " << plan->min_N() * static_cast<long>(p_prev)
         << " exceeds the period cap " << opt.period_cap;
      stop(os.str());
      break;
    }
    ChainStage st;
    st.op = last->tilde;
    st.period = st.op.period();
    st.eps_n = eps_n;
    st.mu_n = last->diag.measured_leb;
    st.mu_target = std::exp(-std::sqrt(static_cast<double>(st.period)));
    st.target_met = met;
    st.distance_to_previous = last->diag.sup_distance;
    st.thin = last->diag;
    if (st.mu_n > 0.0) st.cover = epsilon_neighborhood(last->bands.spectrum(), st.mu_n / 2.0);
    chain.stages.push_back(std::move(st));
    if (!met) {
      stop(head.str() + "measure target exp(-sqrt(p_n)) not reached within the period cap");
      break;
    }
    current = chain.stages.back().op;
    eps_n = next_chain_eps(eps_n, chain.stages.back().mu_n, n + 1, chain.stages.back().period);
  }

  for (std::size_t i = 0; i + 1 < chain.stages.size(); ++i) {
    GordonRecord g;
    g.n = static_cast<int>(i + 1);
    g.p = chain.stages[i].period;
    g.k = static_cast<double>(g.n);
    const auto& next = chain.stages[i + 1].op;
    auto wa = gordon_window(next, g.p);
    auto wb = gordon_window(next, g.p, true);
    g.max_difference = std::max(gordon_max_difference(wa, g.p), gordon_max_difference(wb, g.p));
    g.passed = gordon_check(wa, g.p, g.k) && gordon_check(wb, g.p, g.k);
    chain.gordon.push_back(g);
  }
  return chain;
}

// ---------------------------------------------------------------- Gordon

double gordon_max_difference(std::span<const double> window, std::size_t p) {
  if (p == 0) throw DomainError("Gordon period must be positive");
  if (window.size() < 3 * p)
    throw DomainError("Gordon window needs indices 1-p..2p (" + std::to_string(3 * p) +
                      " values), got " + std::to_string(window.size()));
  double m = 0.0;
  for (std::size_t n = 0; n < p; ++n) {
    double centre = window[n + p];
    m = std::max({m, std::abs(centre - window[n]), std::abs(centre - window[n + 2 * p])});
  }
  return m;
}

bool gordon_check(std::span<const double> window, std::size_t p, double k) {
  if (!(k > 0.0)) throw DomainError("Gordon parameter k must be positive");
  double m = gordon_max_difference(window, p);
  if (m == 0.0) return true;
  // m < k^{-p}, compared in logs so tiny thresholds do not underflow
  return std::log(m) < -static_cast<double>(p) * std::log(k);
}

std::vector<double> gordon_window(const PeriodicJacobi& seq, std::size_t p, bool diagonal) {
  std::vector<double> w;
  w.reserve(3 * p);
  const long lp = static_cast<long>(p);
  for (long n = 1 - lp; n <= 2 * lp; ++n) w.push_back(diagonal ? seq.b_at(n) : seq.a_at(n));
  return w;
}

}  // namespace thinspec
