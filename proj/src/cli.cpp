#include "thinspec/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iostream>

#include "thinspec/dos.hpp"
#include "thinspec/errors.hpp"
#include "thinspec/io.hpp"
#include "thinspec/lattice.hpp"
#include "thinspec/spectrum.hpp"

#ifndef THINSPEC_VERSION
#define THINSPEC_VERSION "0.0.0"
#endif

namespace thinspec {

const char* to_string(Command c) {
  switch (c) {
    case Command::Bands: return "bands";
    case Command::Ids: return "ids";
    case Command::Lyapunov: return "lyapunov";
    case Command::Thin: return "thin";
    case Command::Chain: return "chain";
    case Command::Gordon: return "gordon";
    case Command::Laplacian: return "laplacian";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::Bands, Command::Ids, Command::Lyapunov, Command::Thin, Command::Chain,
                    Command::Gordon, Command::Laplacian})
    if (s == to_string(c)) return c;
  throw DomainError("unknown command '" + s + "'");
}

std::size_t effective_period_cap(const JobConfig& cfg) {
  if (cfg.period_cap) return *cfg.period_cap;
  if (const char* env = std::getenv("THINSPEC_PERIOD_CAP"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1)
      throw DomainError("THINSPEC_PERIOD_CAP must be a positive integer, got '" + std::string(env) + "'");
    return static_cast<std::size_t>(v);
  }
  return kDefaultPeriodCap;
}

namespace {

bool has_coefficients(const JobConfig& cfg) { return !cfg.a.empty() || !cfg.input_path.empty(); }

PeriodicJacobi load_operator(const JobConfig& cfg) {
  if (!cfg.input_path.empty()) {
    if (!cfg.a.empty()) throw DomainError("give coefficients inline or by file, not both");
    return read_coefficients_file(cfg.input_path);
  }
  if (cfg.a.empty()) throw DomainError("no coefficients given (use --a or --input)");
  if (!cfg.b.empty() && cfg.b.size() != cfg.a.size())
    throw DomainError("--b must have as many entries as --a");
  return PeriodicJacobi(cfg.a, cfg.b);
}

json config_json(const JobConfig& cfg) {
  json j = {{"command", to_string(cfg.command)}, {"format", cfg.format}};
  if (!cfg.a.empty()) j["a"] = cfg.a;
  if (!cfg.b.empty()) j["b"] = cfg.b;
  if (!cfg.input_path.empty()) j["input"] = cfg.input_path;
  if (cfg.at) j["at"] = *cfg.at;
  if (cfg.grid) j["grid"] = *cfg.grid;
  switch (cfg.command) {
    case Command::Thin:
      j["eps"] = cfg.eps;
      j["N"] = cfg.N;
      j["mode"] = to_string(cfg.mode);
      break;
    case Command::Chain:
      j["eps"] = cfg.eps;
      j["stages"] = cfg.stages;
      j["mode"] = to_string(cfg.mode);
      break;
    case Command::Gordon:
      j["p"] = cfg.gordon_p;
      j["k"] = cfg.gordon_k;
      break;
    case Command::Laplacian:
      j["d"] = cfg.d;
      if (!cfg.spectrum_path.empty()) j["spectrum"] = cfg.spectrum_path;
      if (cfg.torus_side > 0) j["torus_side"] = cfg.torus_side;
      break;
    default:
      break;
  }
  if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
  return j;
}

json ids_record(const PeriodicJacobi& J, const IdsProfile& prof, double E) {
  json r = {{"E", E}, {"ids", prof(E)}};
  if (std::abs(discriminant(J, E)) < 2.0) {
    IdsBoundCheck c = check_ids_bound(J, E);
    r["dtheta_dE"] = dtheta_dE(J, E);
    r["hs_sum"] = hs_sum(J, E);
    r["bound_lhs"] = c.lhs;
    r["bound_rhs"] = c.rhs;
  } else {
    r["dtheta_dE"] = nullptr;
    r["hs_sum"] = nullptr;
    r["bound_lhs"] = nullptr;
    r["bound_rhs"] = nullptr;
  }
  return r;
}

std::vector<double> energy_grid(const BandStructure& bs, long n) {
  double lo = bs.edges.front(), hi = bs.edges.back();
  double pad = 0.1 * (hi - lo) + 1e-3;
  std::vector<double> g;
  for (long i = 0; i < n; ++i)
    g.push_back(lo - pad + (hi - lo + 2 * pad) * static_cast<double>(i) / static_cast<double>(n - 1));
  return g;
}

std::string records_csv(const json& recs, const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : recs) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      const auto& v = r[cols[i]];
      if (v.is_number_float()) out += format_double(v.get<double>());
      else if (!v.is_null()) out += v.dump();
    }
    out += '\n';
  }
  return out;
}

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Artifact {
  json result;
  std::string csv;
  json diagnostics = json::object();
  std::vector<std::string> extra_outputs;
};

Artifact execute(const JobConfig& cfg) {
  Artifact art;
  const std::size_t cap = effective_period_cap(cfg);
  switch (cfg.command) {
    case Command::Bands: {
      PeriodicJacobi J = load_operator(cfg);
      BandStructure bs = band_structure(J);
      art.result = to_json(bs);
      art.csv = "lo,hi\n";
      for (const auto& b : bs.bands) art.csv += format_double(b.lo) + "," + format_double(b.hi) + "\n";
      art.diagnostics = {{"closed_gaps", bs.closed_gap_count()}, {"lambda0", lambda0(bs)}};
      break;
    }
    case Command::Ids: {
      PeriodicJacobi J = load_operator(cfg);
      IdsProfile prof(J);
      const std::vector<std::string> cols{"E", "ids", "dtheta_dE", "hs_sum", "bound_lhs", "bound_rhs"};
      if (cfg.at) {
        art.result = ids_record(J, prof, *cfg.at);
        art.csv = records_csv(json::array({art.result}), cols);
      } else {
        json pts = json::array();
        for (double E : energy_grid(prof.bands(), *cfg.grid)) pts.push_back(ids_record(J, prof, E));
        art.csv = records_csv(pts, cols);
        art.result = {{"points", pts}};
      }
      break;
    }
    case Command::Lyapunov: {
      PeriodicJacobi J = load_operator(cfg);
      const std::vector<std::string> cols{"E", "lyapunov", "discriminant"};
      auto rec = [&](double E) {
        ScaledMat2 s = monodromy_scaled(J, E, 0);
        double D = s.log_scale < 700.0 ? s.m.trace() * std::exp(s.log_scale) : INFINITY;
        return json{{"E", E}, {"lyapunov", lyapunov(J, E)}, {"discriminant", D}};
      };
      if (cfg.at) {
        art.result = rec(*cfg.at);
        art.csv = records_csv(json::array({art.result}), cols);
      } else {
        json pts = json::array();
        for (double E : energy_grid(band_structure(J), *cfg.grid)) pts.push_back(rec(E));
        art.csv = records_csv(pts, cols);
        art.result = {{"points", pts}};
      }
      break;
    }
    case Command::Thin: {
      PeriodicJacobi J = load_operator(cfg);
      if (static_cast<std::size_t>(cfg.N) * J.period() > cap)
        throw DomainError("period N*p = " + std::to_string(cfg.N * static_cast<long>(J.period())) +
                          " exceeds the period cap " + std::to_string(cap));
      ThinOptions opt;
      opt.period_cap = cap;
      ThinResult r = thin_spectrum(J, cfg.eps, cfg.N, cfg.mode, opt);
      art.result = to_json(r);
      art.csv = emit_plot_csv(r.tilde);
      art.diagnostics = to_json(r.diag);
      break;
    }
    case Command::Chain: {
      PeriodicJacobi J = load_operator(cfg);
      ChainOptions opt;
      opt.period_cap = cap;
      ApproximantChain c = build_limit_periodic(J, cfg.eps, cfg.stages, cfg.mode, opt);
      art.result = to_json(c);
      art.csv = "eps,N\n";
      if (!c.stages.empty()) {
        std::vector<double> scales;
        for (int k = 1; k <= 40; ++k) scales.push_back(std::ldexp(1.0, -k));
        art.csv = emit_cover_curve_csv(band_structure(c.stages.back().op).spectrum(), scales);
      }
      json stages = json::array();
      for (const auto& s : c.stages)
        stages.push_back({{"period", s.period}, {"eps_n", s.eps_n}, {"mu_n", s.mu_n},
                          {"target_met", s.target_met}, {"thin", to_json(s.thin)}});
      art.diagnostics = {{"stages", stages}, {"partial", c.partial}, {"stop_reason", c.stop_reason}};
      break;
    }
    case Command::Gordon: {
      PeriodicJacobi J = load_operator(cfg);
      auto p = static_cast<std::size_t>(cfg.gordon_p);
      auto wa = gordon_window(J, p);
      auto wb = gordon_window(J, p, true);
      double diff = std::max(gordon_max_difference(wa, p), gordon_max_difference(wb, p));
      bool ok = gordon_check(wa, p, cfg.gordon_k) && gordon_check(wb, p, cfg.gordon_k);
      art.result = {{"p", cfg.gordon_p}, {"k", cfg.gordon_k}, {"max_difference", diff},
                    {"log_threshold", -static_cast<double>(p) * std::log(cfg.gordon_k)},
                    {"passed", ok}};
      art.csv = "p,k,max_difference,passed\n" + std::to_string(cfg.gordon_p) + "," +
                format_double(cfg.gordon_k) + "," + format_double(diff) + "," + (ok ? "true" : "false") + "\n";
      break;
    }
    case Command::Laplacian: {
      IntervalUnion x;
      std::vector<double> a{1.0};
      if (!cfg.spectrum_path.empty()) {
        json j;
        try {
          j = json::parse(read_text_file(cfg.spectrum_path));
        } catch (const json::exception& e) {
          throw DomainError("cannot parse " + cfg.spectrum_path + ": " + e.what());
        }
        x = interval_union_from_json(j);
        if (has_coefficients(cfg)) a = load_operator(cfg).a_vec();
      } else {
        PeriodicJacobi J = load_operator(cfg);
        if (!J.is_off_diagonal()) throw PreconditionError("lattice weights need b = 0");
        a = J.a_vec();
        x = band_structure(J).spectrum();
      }
      SeparableWeights w(a, cfg.d);
      IntervalUnion s = laplacian_spectrum(w, x);
      art.result = to_json(s);
      art.result["d"] = cfg.d;
      art.result["measure"] = s.measure();
      art.csv = "lo,hi\n";
      for (const auto& c : s.components()) art.csv += format_double(c.lo) + "," + format_double(c.hi) + "\n";
      if (cfg.torus_side > 0) {
        if (!has_coefficients(cfg)) throw DomainError("torus dump needs coefficients");
        write_file_atomic(cfg.coo_path, emit_coo(torus_laplacian(w, cfg.torus_side)));
        art.extra_outputs.push_back(cfg.coo_path);
      }
      break;
    }
  }
  return art;
}

}  // namespace

void validate(const JobConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv")
    throw DomainError("format must be json or csv, got '" + cfg.format + "'");
  if (cfg.period_cap && *cfg.period_cap < 1) throw DomainError("period cap must be positive");
  (void)effective_period_cap(cfg);
  auto need_coeffs = [&] {
    if (!has_coefficients(cfg)) throw DomainError("no coefficients given (use --a or --input)");
  };
  auto need_eps = [&] {
    if (!(cfg.eps > 0.0) || !std::isfinite(cfg.eps)) throw DomainError("--eps must be positive");
  };
  switch (cfg.command) {
    case Command::Bands:
      need_coeffs();
      break;
    case Command::Ids:
    case Command::Lyapunov:
      need_coeffs();
      if (cfg.at.has_value() == cfg.grid.has_value()) throw DomainError("give exactly one of --at or --grid");
      if (cfg.at && !std::isfinite(*cfg.at)) throw DomainError("--at must be finite");
      if (cfg.grid && *cfg.grid < 2) throw DomainError("--grid needs at least 2 points");
      break;
    case Command::Thin:
      need_coeffs();
      need_eps();
      if (cfg.N < 1) throw DomainError("--N must be a positive integer");
      break;
    case Command::Chain:
      need_coeffs();
      need_eps();
      if (cfg.stages < 1) throw DomainError("--stages must be at least 1");
      break;
    case Command::Gordon:
      need_coeffs();
      if (cfg.gordon_p < 1) throw DomainError("--p must be a positive integer");
      if (!(cfg.gordon_k > 0.0)) throw DomainError("--k must be positive");
      break;
    case Command::Laplacian:
      if (cfg.d < 1) throw DomainError("--d must be at least 1");
      if (cfg.spectrum_path.empty()) need_coeffs();
      if (cfg.torus_side < 0) throw DomainError("--torus-side must be nonnegative");
      if (cfg.torus_side > 0 && cfg.coo_path.empty()) throw DomainError("--torus-side needs --coo");
      break;
  }
}

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  json manifest = {{"tool", "thinspec"}, {"version", THINSPEC_VERSION}, {"command", to_string(cfg.command)},
                   {"config", config_json(cfg)}};
  if (cfg.with_timestamp) manifest["timestamp"] = now_iso8601();
  int code = kExitOk;
  json outputs = json::array();
  try {
    validate(cfg);
    manifest["period_cap"] = effective_period_cap(cfg);
    Artifact art = execute(cfg);
    std::string text = cfg.format == "csv" ? art.csv : dump_json(art.result);
    if (cfg.output_path.empty()) {
      out << text;
    } else {
      write_file_atomic(cfg.output_path, text);
      outputs.push_back(cfg.output_path);
    }
    for (const auto& o : art.extra_outputs) outputs.push_back(o);
    manifest["diagnostics"] = art.diagnostics;
  } catch (const DomainError& e) {
    code = kExitValidation;
    err << "error: " << e.what() << '\n';
    manifest["error"] = e.what();
  } catch (const NumericalError& e) {
    code = kExitNumerical;
    err << "numerical error: " << e.what() << '\n';
    manifest["error"] = e.what();
  } catch (const std::exception& e) {
    code = kExitNumerical;
    err << "error: " << e.what() << '\n';
    manifest["error"] = e.what();
  }
  manifest["outputs"] = outputs;
  manifest["exit_code"] = code;
  std::string mpath = cfg.manifest_path;
  if (mpath.empty()) mpath = cfg.output_path.empty() ? "thinspec-manifest.json" : cfg.output_path + ".manifest.json";
  try {
    write_file_atomic(mpath, dump_json(manifest));
  } catch (const std::exception& e) {
    err << "error: cannot write manifest: " << e.what() << '\n';
    if (code == kExitOk) code = kExitValidation;
  }
  return code;
}

}  // namespace thinspec
