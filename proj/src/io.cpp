#include "thinspec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "thinspec/errors.hpp"

namespace thinspec {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void dump_rec(const json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // numeric leaves stay on one line
      bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_rec(v, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

json pair(double lo, double hi) { return json::array({lo, hi}); }

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out += '\n';
  return out;
}

json to_json(const IntervalUnion& x) {
  json c = json::array();
  for (const auto& i : x.components()) c.push_back(pair(i.lo, i.hi));
  return {{"components", c}};
}

json to_json(const BandStructure& bs) {
  json bands = json::array(), gaps = json::array();
  for (const auto& b : bs.bands) bands.push_back(pair(b.lo, b.hi));
  for (const auto& g : bs.gaps) {
    if (g.closed)
      gaps.push_back({{"type", "closed"}, {"at", g.at()}});
    else
      gaps.push_back({{"type", "open"}, {"interval", pair(g.lo, g.hi)}});
  }
  return {{"period", bs.period}, {"bands", bands}, {"gaps", gaps}, {"measure", bs.measure}};
}

json to_json(const ThinDiagnostics& d) {
  return {{"eta", d.eta},
          {"eta_energy", d.eta_energy},
          {"ell", d.ell},
          {"N", d.N},
          {"N_tilde", d.N_tilde},
          {"N_prime", d.N_prime},
          {"min_N", d.min_N},
          {"measured_leb", d.measured_leb},
          {"predicted_bound", d.predicted_bound},
          {"s_offsets", d.s_offsets},
          {"Lambda", d.Lambda},
          {"K", d.K},
          {"K_claim", d.K_claim},
          {"shift_step", d.shift_step},
          {"leb_centre", d.leb_centre},
          {"lambda0_doubled", d.lambda0_doubled},
          {"zero_exclusion_delta", d.zero_exclusion_delta},
          {"pattern_amplitude", d.pattern_amplitude},
          {"seed", d.seed},
          {"base_period", d.base_period},
          {"sup_distance", d.sup_distance},
          {"candidates_tried", d.candidates_tried}};
}

json to_json(const ScalingFamily& f) {
  return {{"mode", to_string(f.mode)}, {"ell", f.ell()},          {"factors", f.factors},
          {"Lambda", f.Lambda},        {"K", f.K},                {"K_claim", f.K_claim},
          {"shift_step", f.shift_step}, {"base_period", f.base_period},
          {"max_distance", f.max_distance}, {"within_budget", f.within_budget}};
}

json to_json(const ThinResult& r) {
  return {{"mode", to_string(r.mode)},
          {"period", r.tilde.period()},
          {"a", r.tilde.a_vec()},
          {"b", r.tilde.b_vec()},
          {"diagnostics", to_json(r.diag)},
          {"bands", to_json(r.bands)}};
}

json to_json(const ApproximantChain& c) {
  json stages = json::array();
  for (const auto& s : c.stages) {
    stages.push_back({{"period", s.period},
                      {"eps_n", s.eps_n},
                      {"mu_n", s.mu_n},
                      {"mu_target", s.mu_target},
                      {"target_met", s.target_met},
                      {"distance_to_previous", s.distance_to_previous},
                      {"a", s.op.a_vec()},
                      {"b", s.op.b_vec()},
                      {"diagnostics", to_json(s.thin)},
                      {"cover", to_json(s.cover)}});
  }
  json gordon = json::array();
  for (const auto& g : c.gordon)
    gordon.push_back({{"n", g.n}, {"p", g.p}, {"k", g.k}, {"max_difference", g.max_difference},
                      {"passed", g.passed}});
  json covers = json::array();
  for (const auto& cv : c.covers())
    covers.push_back({{"log_count", cv.log_count}, {"log_inv_scale", cv.log_inv_scale},
                      {"ratio", cv.ratio()}});
  json out = {{"mode", to_string(c.mode)}, {"eps", c.eps},        {"period_cap", c.period_cap},
              {"stages", stages},          {"gordon", gordon},    {"covers", covers},
              {"partial", c.partial},      {"stop_reason", c.stop_reason}, {"log", c.log}};
  auto cv = c.covers();
  out["box_dim"] = cv.size() >= 2 ? json(box_dim_estimate(cv)) : json(nullptr);
  return out;
}

json to_json(const IdsBoundCheck& c) {
  return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}, {"equality_case", c.equality_case},
          {"near_parabolic", c.near_parabolic}};
}

IntervalUnion interval_union_from_json(const json& j) {
  const json* arr = nullptr;
  if (j.is_object() && j.contains("components")) arr = &j["components"];
  else if (j.is_object() && j.contains("bands")) arr = &j["bands"];
  if (!arr || !arr->is_array()) throw DomainError("expected a JSON object with 'components' or 'bands'");
  std::vector<Interval> parts;
  for (const auto& c : *arr) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      throw DomainError("interval entries must be [lo, hi] pairs");
    parts.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  return IntervalUnion(std::move(parts));
}

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (field.empty()) throw ParseError(line, "empty field");
  if (field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value");
  return v;
}

}  // namespace

PeriodicJacobi parse_coefficients(std::string_view text) {
  std::vector<double> a, b;
  int columns = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      auto c = line.find(',', start);
      fields.push_back(line.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
      if (c == std::string_view::npos) break;
      start = c + 1;
    }
    if (fields.size() > 2) throw ParseError(line_no, "expected columns a[,b]");
    int cols = static_cast<int>(fields.size());
    if (columns == 0) columns = cols;
    if (cols != columns) throw ParseError(line_no, "inconsistent column count");
    a.push_back(parse_number(fields[0], line_no));
    b.push_back(cols == 2 ? parse_number(fields[1], line_no) : 0.0);
  }
  if (a.empty()) throw ParseError(line_no, "no coefficients found");
  return PeriodicJacobi(std::move(a), std::move(b));
}

std::string emit_coefficients(const PeriodicJacobi& J) {
  std::string out;
  const bool two = !J.is_off_diagonal();
  for (std::size_t i = 0; i < J.period(); ++i) {
    out += format_double(J.a()[i]);
    if (two) out += "," + format_double(J.b()[i]);
    out += '\n';
  }
  return out;
}

PeriodicJacobi read_coefficients_file(const std::filesystem::path& path) {
  return parse_coefficients(read_text_file(path));
}

std::string emit_plot_csv(const PeriodicJacobi& J) {
  const bool two = !J.is_off_diagonal();
  std::string out = two ? "index,a,b\n" : "index,a\n";
  for (std::size_t i = 0; i < J.period(); ++i) {
    out += std::to_string(i + 1) + "," + format_double(J.a()[i]);
    if (two) out += "," + format_double(J.b()[i]);
    out += '\n';
  }
  return out;
}

std::string emit_cover_curve_csv(const IntervalUnion& x, std::span<const double> scales) {
  std::string out = "eps,N\n";
  for (double e : scales) out += format_double(e) + "," + std::to_string(cover_count(x, e)) + "\n";
  return out;
}

std::string emit_coo(const std::vector<CooEntry>& entries) {
  std::string out;
  for (const auto& e : entries)
    out += std::to_string(e.row) + " " + std::to_string(e.col) + " " + format_double(e.value) + "\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DomainError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DomainError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace thinspec
