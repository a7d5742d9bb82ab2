#include "cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "largeset/approximant.hpp"
#include "largeset/avoider.hpp"
#include "largeset/orbits.hpp"
#include "largeset/sequence.hpp"
#include "largeset/verify.hpp"

namespace largeset::cli {

namespace {

using nlohmann::json;

// A bad parameter value; the message starts with the field path.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Type { rat, approx, uint, text, choice, sequence, window, grid, rat_list, h_range, flag, path, event };

struct Field {
  std::string name;
  Type type;
  bool required = false;
  std::string fallback;  // default value, empty for none
  std::string help;
  std::string alias;
  std::vector<std::string> choices;
  bool multi = false;
};

std::vector<Field> avoider_fields(bool search) {
  return {
      {"kind", Type::choice, true, "", "avoider construction", "", {"lemma2", "power_strip", "integer_power", "enumeration"}},
      {"epsilon", Type::rat, true, "", "largeness defect eps", "eps"},
      {"y", Type::approx, false, "golden@1e-12", "lemma2 dilation y > 1 (rational or name@precision)"},
      {"b", Type::rat, false, "", "power_strip base (rational > 1) or integer_power base (integer >= 2)"},
      {"N", Type::uint, false, "", "integer_power bin count (default: least N with 1/N <= eps/2)"},
      {"B", Type::rat_list, false, "", "enumeration dilations: comma list or calkin_wilf:<count>"},
      {"enum-depth", Type::uint, false, "10", "enumeration pairing depth k <= enum-depth"},
      {"sequence", Type::sequence, search, "", "sequence: JSON, n, n^k, <b>^n or block"},
  };
}

std::map<std::string, std::vector<Field>> build_schemas() {
  std::map<std::string, std::vector<Field>> s;
  auto with = [](std::vector<Field> base, std::vector<Field> extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
  };
  const Field out{"out", Type::path, false, "", "write the JSON report here instead of stdout"};
  const Field csv{"csv", Type::path, false, "", "write plot-ready CSV here"};
  s["construct"] = with(avoider_fields(false),
                        {{"window", Type::window, false, "0:10", "materialization window lo:hi"},
                         {"emit", Type::path, false, "", "write the materialized interval JSON here"},
                         out});
  s["verify-large"] = with(avoider_fields(false), {{"window", Type::window, true, "", "window lo:hi"}, out});
  s["witness"] = with(avoider_fields(true),
                      {{"x", Type::approx, true, "", "dilation x != 0"},
                       {"t", Type::approx, false, "0", "translation t"},
                       {"depth", Type::uint, false, "10000", "search depth"},
                       {"require-witness", Type::flag, false, "", "exit 1 when no witness is found"},
                       out});
  s["scan"] = with(avoider_fields(true),
                   {{"x-grid", Type::grid, true, "", "x values: start:step:count or a comma list"},
                    {"t-grid", Type::grid, false, "0", "t values: start:step:count or a comma list"},
                    {"depth", Type::uint, false, "10000", "search depth per cell"},
                    {"fail-on-inconclusive", Type::flag, false, "", "exit 1 when any cell is inconclusive"},
                    csv, out});
  s["orbit"] = {{"sequence", Type::sequence, true, "", "sequence"},
                {"x", Type::approx, true, "", "dilation"},
                {"t", Type::approx, false, "0", "translation"},
                {"N", Type::uint, true, "", "number of terms"},
                {"bins", Type::uint, false, "10", "histogram bins"},
                out};
  s["probe"] = {{"sequence", Type::sequence, true, "", "sequence"},
                {"delta", Type::rat, true, "", "gap threshold in (0, 1]"},
                {"N", Type::uint, true, "", "number of terms"},
                {"grid", Type::grid, true, "", "x grid start:step:count"},
                csv, out};
  s["dim-est"] = {{"sequence", Type::sequence, true, "", "sequence"},
                  {"delta", Type::rat, true, "", "gap threshold in (0, 1]"},
                  {"N", Type::uint, true, "", "number of terms"},
                  {"grid", Type::grid, true, "", "x grid start:step:count"},
                  {"scales", Type::rat_list, true, "", "box sizes: comma list or pow2:<from>:<to>"},
                  csv, out};
  s["lemma41"] = {{"alpha", Type::approx, true, "", "first period"},
                  {"beta", Type::approx, true, "", "second period"},
                  {"epsilon", Type::rat, true, "", "strip width", "eps"},
                  {"window", Type::window, true, "", "window lo:hi"},
                  out};
  s["chung-erdos"] = {{"event", Type::event, true, "", "periodic event period|lo:hi[,lo:hi...] (repeatable)", "", {}, true},
                      {"window", Type::window, true, "", "window lo:hi"},
                      out};
  s["density"] = {{"sequence", Type::sequence, true, "", "sequence"},
                  {"n", Type::uint, true, "", "window length"},
                  {"h-range", Type::h_range, true, "", "offsets lo:hi"},
                  {"max-terms", Type::uint, false, "10000", "terms whose integer parts form A"},
                  out};
  s["period"] = {{"b", Type::rat, true, "", "integer base >= 2"},
                 {"modulus", Type::uint, true, "", "modulus >= 1"},
                 out};
  return s;
}

const std::map<std::string, std::vector<Field>>& schemas() {
  static const auto s = build_schemas();
  return s;
}

const std::vector<Field>& schema_for(const std::string& command) {
  const auto it = schemas().find(command);
  if (it == schemas().end()) throw UsageError("command: unknown command '" + command + "'");
  return it->second;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Window parse_window(const std::string& s) {
  const auto p = split(s, ':');
  if (p.size() != 2) throw std::invalid_argument("expected lo:hi");
  return Window(Rat::parse(p[0]), Rat::parse(p[1]));
}

std::vector<Rat> parse_grid(const std::string& s) {
  if (s.find(':') != std::string::npos) {
    const auto p = split(s, ':');
    if (p.size() != 3) throw std::invalid_argument("expected start:step:count");
    const Rat start = Rat::parse(p[0]);
    const Rat step = Rat::parse(p[1]);
    const std::uint64_t count = std::stoull(p[2]);
    if (step.sign() <= 0) throw std::invalid_argument("grid step must be positive");
    std::vector<Rat> out;
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(start + step * Rat(i));
    return out;
  }
  std::vector<Rat> out;
  for (const auto& v : split(s, ',')) out.push_back(Rat::parse(v));
  return out;
}

Grid parse_grid_spec(const std::string& s) {
  const auto p = split(s, ':');
  if (p.size() != 3) throw std::invalid_argument("expected start:step:count");
  Grid g{Rat::parse(p[0]), Rat::parse(p[1]), std::stoull(p[2])};
  if (g.step.sign() <= 0) throw std::invalid_argument("grid step must be positive");
  return g;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  if (s.rfind("calkin_wilf:", 0) == 0) return calkin_wilf_rationals(std::stoull(s.substr(12)));
  if (s.rfind("pow2:", 0) == 0) {
    const auto p = split(s.substr(5), ':');
    if (p.size() != 2) throw std::invalid_argument("expected pow2:<from>:<to>");
    const unsigned long from = std::stoul(p[0]), to = std::stoul(p[1]);
    if (from > to || to > 256) throw std::invalid_argument("pow2 range must satisfy from <= to <= 256");
    std::vector<Rat> out;
    for (unsigned long k = from; k <= to; ++k) out.push_back(Rat(BigInt(1), BigInt(1) << k));
    return out;
  }
  std::vector<Rat> out;
  for (const auto& v : split(s, ',')) out.push_back(Rat::parse(v));
  return out;
}

PeriodicSet parse_event(const std::string& s) {
  const auto bar = s.find('|');
  if (bar == std::string::npos) throw std::invalid_argument("expected period|lo:hi[,lo:hi...]");
  const Rat period = Rat::parse(s.substr(0, bar));
  std::vector<Interval> parts;
  for (const auto& iv : split(s.substr(bar + 1), ',')) {
    const auto p = split(iv, ':');
    if (p.size() != 2) throw std::invalid_argument("expected lo:hi in '" + iv + "'");
    parts.push_back({Rat::parse(p[0]), Rat::parse(p[1])});
  }
  return PeriodicSet(period, normalize(std::move(parts)));
}

std::uint64_t parse_uint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("expected a nonnegative integer");
  }
  return std::stoull(s);
}

// Typed, path-annotated access to a validated config.
class Params {
 public:
  Params(const Config& c) : c_(c), fields_(schema_for(c.command)) {}

  bool has(const std::string& name) const { return raw(name).has_value(); }

  std::optional<std::string> raw(const std::string& name) const {
    if (c_.params.contains(name)) {
      const auto& v = c_.params.at(name);
      if (v.is_string()) return v.get<std::string>();
      return v.dump();
    }
    const auto& f = field(name);
    if (!f.fallback.empty()) return f.fallback;
    return std::nullopt;
  }

  std::string need(const std::string& name, const std::string& why = {}) const {
    auto v = raw(name);
    if (!v) throw UsageError("params." + name + ": required" + (why.empty() ? "" : " " + why));
    return *v;
  }

  template <class F>
  auto parse(const std::string& name, F f, const std::string& why = {}) const {
    const std::string v = need(name, why);
    try {
      return f(v);
    } catch (const UsageError&) {
      throw;
    } catch (const PrecisionShortfall&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError("params." + name + ": " + e.what() + " (got '" + v + "')");
    }
  }

  Rat rat(const std::string& n, const std::string& why = {}) const {
    return parse(n, [](const std::string& v) { return Rat::parse(v); }, why);
  }
  Approx approx(const std::string& n) const {
    return parse(n, [](const std::string& v) { return parse_approx(v); });
  }
  std::uint64_t uint(const std::string& n, const std::string& why = {}) const { return parse(n, parse_uint, why); }
  Window window(const std::string& n) const { return parse(n, parse_window); }
  SequenceSpec sequence(const std::string& n, const std::string& why = {}) const {
    return parse(n, [](const std::string& v) { return SequenceSpec::parse(v); }, why);
  }
  bool flag(const std::string& n) const { return raw(n).value_or("false") == "true"; }
  std::string path(const std::string& n) const { return raw(n).value_or(""); }

  std::vector<std::string> multi(const std::string& n) const {
    std::vector<std::string> out;
    if (!c_.params.contains(n)) return out;
    const auto& v = c_.params.at(n);
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    } else {
      out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out;
  }

  const Field& field(const std::string& name) const {
    for (const auto& f : fields_) {
      if (f.name == name) return f;
    }
    throw std::logic_error("no field " + name + " in schema of " + c_.command);
  }

 private:
  const Config& c_;
  const std::vector<Field>& fields_;
};

void check_value(const Field& f, const std::string& v) {
  switch (f.type) {
    case Type::rat: Rat::parse(v); break;
    case Type::approx: parse_approx(v); break;
    case Type::uint: parse_uint(v); break;
    case Type::choice:
      if (std::find(f.choices.begin(), f.choices.end(), v) == f.choices.end()) {
        std::string all;
        for (const auto& c : f.choices) all += (all.empty() ? "" : ", ") + c;
        throw std::invalid_argument("expected one of " + all);
      }
      break;
    case Type::sequence: SequenceSpec::parse(v); break;
    case Type::window: parse_window(v); break;
    case Type::grid: parse_grid(v); break;
    case Type::rat_list: parse_rat_list(v); break;
    case Type::h_range: {
      const auto p = split(v, ':');
      if (p.size() != 2) throw std::invalid_argument("expected lo:hi");
      parse_bigint(p[0]);
      parse_bigint(p[1]);
      break;
    }
    case Type::flag:
      if (v != "true" && v != "false") throw std::invalid_argument("expected true or false");
      break;
    case Type::event: parse_event(v); break;
    case Type::text:
    case Type::path: break;
  }
}

std::string validate_or_throw(const Config& c) {
  const auto& fields = schema_for(c.command);
  if (!c.params.is_object()) throw UsageError("params: expected an object");
  for (const auto& [key, value] : c.params.items()) {
    const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field& f) { return f.name == key; });
    if (it == fields.end()) throw UsageError("params." + key + ": unknown field for command " + c.command);
    std::vector<json> values;
    if (value.is_array()) {
      if (!it->multi) throw UsageError("params." + key + ": expected a single value, not an array");
      values.assign(value.begin(), value.end());
    } else {
      values.push_back(value);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string path = "params." + key + (value.is_array() ? "[" + std::to_string(i) + "]" : "");
      const auto& v = values[i];
      if (!v.is_string() && !v.is_number() && !v.is_boolean()) {
        throw UsageError(path + ": expected a string, number or boolean");
      }
      const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
      try {
        check_value(*it, text);
      } catch (const PrecisionShortfall&) {
        throw;
      } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what() + " (got '" + text + "')");
      }
    }
  }
  for (const auto& f : fields) {
    if (f.required && !c.params.contains(f.name) && f.fallback.empty()) {
      throw UsageError("params." + f.name + ": required field missing");
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Output

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

std::string decimal(const Rat& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", r.to_double());
  return buf;
}

class CsvBuilder {
 public:
  CsvBuilder(const Config& c, const std::vector<std::string>& header) {
    os_ << "# largeset " << c.command << " config_hash=" << config_hash(c) << "\n";
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << "\n";
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

struct Outcome {
  json result;
  int code = kPass;
};

// ---------------------------------------------------------------------------
// Commands

AvoiderSet make_avoider(const Params& p) {
  const std::string kind = p.need("kind");
  const Rat eps = p.rat("epsilon");
  auto wrap = [&](auto f) {
    try {
      return f();
    } catch (const std::invalid_argument& e) {
      throw UsageError("params: " + std::string(e.what()));
    }
  };
  if (kind == "lemma2") {
    const Approx y = p.approx("y");
    return wrap([&] { return build_lemma_avoider(eps, y); });
  }
  if (kind == "power_strip") {
    const Rat b = p.rat("b", "for kind power_strip");
    return wrap([&] { return build_power_strip(b, eps); });
  }
  if (kind == "integer_power") {
    const Rat b = p.rat("b", "for kind integer_power");
    if (!b.is_integer()) throw UsageError("params.b: integer_power needs an integer base");
    std::optional<std::uint64_t> N;
    if (p.has("N")) N = p.uint("N");
    return wrap([&] { return build_integer_power(b.num(), eps, N); });
  }
  const auto seq = p.sequence("sequence", "for kind enumeration");
  const auto B = p.parse("B", parse_rat_list, "for kind enumeration");
  const auto depth = p.uint("enum-depth");
  return wrap([&] { return build_enumeration_avoider(seq, B, eps, depth); });
}

json approx_json(const Approx& a) {
  return {{"value", a.value.str()}, {"error", a.error.str()}, {"provenance", a.provenance}};
}

Outcome cmd_construct(const Config& c, const Params& p) {
  const auto a = make_avoider(p);
  const auto w = p.window("window");
  const auto s = a.materialize(w);
  Outcome o;
  o.result = {{"avoider", a.to_json()},
              {"window", {w.lo.str(), w.hi.str()}},
              {"parts", s.size()},
              {"measure", measure(s).str()}};
  if (const auto path = p.path("emit"); !path.empty()) {
    write_atomic(path, to_json(s).dump() + "\n");
    o.result["emitted"] = path;
  }
  (void)c;
  return o;
}

Outcome cmd_verify_large(const Config&, const Params& p) {
  const auto a = make_avoider(p);
  const auto r = verify_largeness(a, p.window("window"));
  Outcome o;
  o.result = to_json(r);
  o.result["avoider"] = a.to_json();
  o.code = r.pass ? kPass : kVerificationFailure;
  return o;
}

Outcome cmd_witness(const Config&, const Params& p) {
  const auto a = make_avoider(p);
  const auto s = p.sequence("sequence");
  const auto x = p.approx("x");
  const auto t = p.approx("t");
  const auto depth = p.uint("depth");
  if (x.value.sign() == 0) throw UsageError("params.x: dilation must be nonzero");
  const auto w = find_escape_witness(a, s, x.value, t.value, depth, {x.error, t.error});
  Outcome o;
  o.result = to_json(w);
  o.result["x_input"] = approx_json(x);
  o.result["t_input"] = approx_json(t);
  if (x.exact() && t.exact()) {
    if (const auto up = periodicity_upgrade(a, s, x.value, t.value)) o.result["periodicity_upgrade"] = to_json(*up);
  }
  if (p.flag("require-witness") && w.inconclusive()) o.code = kVerificationFailure;
  return o;
}

Outcome cmd_scan(const Config& c, const Params& p) {
  const auto a = make_avoider(p);
  const auto s = p.sequence("sequence");
  const auto xs = p.parse("x-grid", parse_grid);
  const auto ts = p.parse("t-grid", parse_grid);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].sign() == 0) throw UsageError("params.x-grid[" + std::to_string(i) + "]: dilation must be nonzero");
  }
  const auto r = grid_escape_scan(a, s, xs, ts, p.uint("depth"));
  Outcome o;
  o.result = to_json(r);
  if (const auto path = p.path("csv"); !path.empty()) {
    CsvBuilder csv(c, {"x", "t", "witness_index", "x_dec", "t_dec"});
    for (const auto& w : r.cells) {
      csv.row({w.x.str(), w.t.str(), w.witness_index ? std::to_string(*w.witness_index) : "", decimal(w.x),
               decimal(w.t)});
    }
    write_atomic(path, csv.str());
  }
  if (p.flag("fail-on-inconclusive") && r.summary.inconclusive > 0) o.code = kVerificationFailure;
  return o;
}

Outcome cmd_orbit(const Config&, const Params& p) {
  const auto s = p.sequence("sequence");
  const auto x = p.approx("x");
  const auto t = p.approx("t");
  const auto N = p.uint("N");
  const auto bins = p.uint("bins");
  if (N == 0) throw UsageError("params.N: must be >= 1");
  if (bins == 0 || bins > 1'000'000) throw UsageError("params.bins: must be in [1, 10^6]");
  const auto st = orbit_stats(s, x.value, t.value, N, static_cast<unsigned>(bins));
  Outcome o;
  o.result = {{"x", st.x.str()},
              {"N", st.N},
              {"max_gap", st.max_gap.str()},
              {"star_discrepancy", st.star_discrepancy.str()},
              {"histogram", st.histogram},
              {"approximate", st.approximate || !x.exact() || !t.exact()},
              {"x_input", approx_json(x)},
              {"t_input", approx_json(t)}};
  return o;
}

ExceptionalProbe run_probe(const Params& p) {
  const auto s = p.sequence("sequence");
  const auto delta = p.rat("delta");
  const auto N = p.uint("N");
  const auto g = p.parse("grid", parse_grid_spec);
  if (N == 0) throw UsageError("params.N: must be >= 1");
  if (delta.sign() <= 0 || delta > 1) throw UsageError("params.delta: must lie in (0, 1]");
  return exceptional_probe(s, delta, N, g);
}

json probe_summary(const ExceptionalProbe& pr) {
  auto hits = json::array();
  for (const auto& h : pr.hits()) hits.push_back(h.str());
  return {{"delta", pr.delta.str()},
          {"N", pr.N},
          {"grid", {{"start", pr.grid.start.str()}, {"step", pr.grid.step.str()}, {"count", pr.grid.count}}},
          {"hit_count", pr.hits().size()},
          {"hits", hits}};
}

Outcome cmd_probe(const Config& c, const Params& p) {
  const auto pr = run_probe(p);
  Outcome o;
  o.result = probe_summary(pr);
  if (const auto path = p.path("csv"); !path.empty()) {
    CsvBuilder csv(c, {"x", "max_gap", "D_N", "hit", "x_dec", "max_gap_dec", "D_N_dec"});
    for (const auto& r : pr.rows) {
      csv.row({r.x.str(), r.max_gap.str(), r.discrepancy.str(), r.hit ? "1" : "0", decimal(r.x), decimal(r.max_gap),
               decimal(r.discrepancy)});
    }
    write_atomic(path, csv.str());
  }
  return o;
}

Outcome cmd_dim_est(const Config& c, const Params& p) {
  const auto pr = run_probe(p);
  const auto scales = p.parse("scales", parse_rat_list);
  DimensionEstimate d;
  try {
    d = box_dimension_estimate(pr, scales);
  } catch (const std::invalid_argument& e) {
    throw UsageError("params.scales: " + std::string(e.what()));
  }
  Outcome o;
  auto sc = json::array();
  for (const auto& s : d.scales) sc.push_back(s.str());
  o.result = {{"probe", probe_summary(pr)},
              {"scales", sc},
              {"counts", d.counts},
              {"slope", d.slope},
              {"raw_slope", d.raw_slope},
              {"r2", d.r2},
              {"note", "finite-N box-counting proxy"}};
  if (const auto path = p.path("csv"); !path.empty()) {
    CsvBuilder csv(c, {"scale", "count", "scale_dec"});
    for (std::size_t k = 0; k < d.scales.size(); ++k) {
      csv.row({d.scales[k].str(), std::to_string(d.counts[k]), decimal(d.scales[k])});
    }
    write_atomic(path, csv.str());
  }
  return o;
}

Outcome cmd_lemma41(const Config&, const Params& p) {
  const auto alpha = p.approx("alpha");
  const auto beta = p.approx("beta");
  const auto eps = p.rat("epsilon");
  const auto w = p.window("window");
  Lemma41Result r;
  try {
    r = lemma41_exact_measure({alpha.value, beta.value, eps, w});
  } catch (const std::invalid_argument& e) {
    throw UsageError("params: " + std::string(e.what()));
  }
  Outcome o;
  o.result = {{"exact", r.exact.str()},
              {"asymptotic", r.asymptotic.str()},
              {"relative_error", r.relative_error.str()},
              {"relative_error_dec", r.relative_error.to_double()},
              {"alpha_input", approx_json(alpha)},
              {"beta_input", approx_json(beta)},
              {"approximate", !alpha.exact() || !beta.exact()}};
  return o;
}

Outcome cmd_chung_erdos(const Config&, const Params& p) {
  std::vector<PeriodicSet> events;
  const auto raw = p.multi("event");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    try {
      events.push_back(parse_event(raw[i]));
    } catch (const std::exception& e) {
      throw UsageError("params.event[" + std::to_string(i) + "]: " + e.what());
    }
  }
  const auto r = chung_erdos_check(events, p.window("window"));
  Outcome o;
  o.result = {{"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}, {"holds", r.holds}};
  o.code = r.holds ? kPass : kVerificationFailure;
  return o;
}

Outcome cmd_density(const Config&, const Params& p) {
  const auto s = p.sequence("sequence");
  const auto n = p.uint("n");
  const auto range = split(p.need("h-range"), ':');
  const BigInt lo = parse_bigint(range[0]), hi = parse_bigint(range[1]);
  if (n == 0) throw UsageError("params.n: window length must be positive");
  if (hi < lo) throw UsageError("params.h-range: empty range");
  const auto d = banach_density_estimate(s, static_cast<std::int64_t>(n), lo, hi, p.uint("max-terms"));
  Outcome o;
  o.result = {{"window_length", d.window_length},
              {"best_offset", to_string(d.best_offset)},
              {"count", d.count},
              {"ratio", d.ratio.str()}};
  return o;
}

Outcome cmd_period(const Config&, const Params& p) {
  const auto b = p.rat("b");
  if (!b.is_integer() || b < 2) throw UsageError("params.b: must be an integer >= 2");
  const auto m = p.uint("modulus");
  if (m == 0) throw UsageError("params.modulus: must be >= 1");
  Outcome o;
  o.result = to_json(eventual_period(b.num(), m));
  return o;
}

Outcome dispatch(const Config& c) {
  const Params p(c);
  if (c.command == "construct") return cmd_construct(c, p);
  if (c.command == "verify-large") return cmd_verify_large(c, p);
  if (c.command == "witness") return cmd_witness(c, p);
  if (c.command == "scan") return cmd_scan(c, p);
  if (c.command == "orbit") return cmd_orbit(c, p);
  if (c.command == "probe") return cmd_probe(c, p);
  if (c.command == "dim-est") return cmd_dim_est(c, p);
  if (c.command == "lemma41") return cmd_lemma41(c, p);
  if (c.command == "chung-erdos") return cmd_chung_erdos(c, p);
  if (c.command == "density") return cmd_density(c, p);
  if (c.command == "period") return cmd_period(c, p);
  throw UsageError("command: unknown command '" + c.command + "'");
}

Config read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("--config: cannot read " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError("--config: " + path + " is not valid JSON: " + e.what());
  }
  return Config::from_json(j);
}

}  // namespace

Config Config::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  if (!j.contains("command") || !j["command"].is_string()) throw UsageError("command: required string field");
  Config c;
  c.command = j["command"].get<std::string>();
  schema_for(c.command);
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw UsageError("params: expected an object");
    for (const auto& [k, v] : j["params"].items()) {
      if (v.is_array()) {
        auto arr = json::array();
        for (const auto& e : v) arr.push_back(e.is_string() ? e : json(e.dump()));
        c.params[k] = arr;
      } else if (v.is_string()) {
        c.params[k] = v;
      } else if (v.is_boolean() || v.is_number()) {
        c.params[k] = v.dump();
      } else {
        throw UsageError("params." + k + ": expected a string, number, boolean or array");
      }
    }
  }
  for (const auto& [k, v] : j.items()) {
    if (k != "command" && k != "params") throw UsageError(k + ": unknown top-level config field");
  }
  return c;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const Config& c) { return hex64(fnv1a64(c.canonical())); }

std::string validate(const Config& c) {
  try {
    return validate_or_throw(c);
  } catch (const UsageError& e) {
    return e.what();
  }
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, fields] : schemas()) out.push_back(name);
  return out;
}

static const std::map<std::string, std::string>& summaries() {
  static const std::map<std::string, std::string> m{
      {"construct", "build an avoider and materialize it on a window"},
      {"verify-large", "exact minimum unit-window measure against the target"},
      {"witness", "least n with x a_n + t outside the avoider"},
      {"scan", "escape witnesses over an x by t grid"},
      {"orbit", "max gap, star discrepancy and histogram of <x a_n + t>"},
      {"probe", "grid points whose orbit leaves an empty arc >= delta"},
      {"dim-est", "box-counting slope of the probe hit set"},
      {"lemma41", "exact measure of two congruence strips against eps^2 y / (alpha beta)"},
      {"chung-erdos", "Chung-Erdos lower bound for periodic events"},
      {"density", "upper Banach density estimate"},
      {"period", "preperiod and period of b^n mod m"},
  };
  return m;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructs and verifies large sets avoiding affine copies of sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "largeset 0.1.0");

  struct Bound {
    CLI::App* sub;
    std::map<std::string, std::string> single;
    std::map<std::string, std::vector<std::string>> repeated;
    std::map<std::string, bool> flags;
    std::string config_path;
    std::string dump_config;
  };
  std::map<std::string, Bound> bound;
  for (const auto& [name, fields] : schemas()) {
    auto& b = bound[name];
    b.sub = app.add_subcommand(name, summaries().at(name));
    b.sub->add_option("--config", b.config_path, "JSON config {\"command\", \"params\"}; flags override it");
    b.sub->add_option("--dump-config", b.dump_config, "write the effective config as JSON");
    for (const auto& f : fields) {
      std::string names = "--" + f.name + (f.alias.empty() ? "" : ",--" + f.alias);
      std::string help = f.help + (f.fallback.empty() ? "" : " [default: " + f.fallback + "]");
      if (f.type == Type::flag) {
        b.sub->add_flag(names, b.flags[f.name], help);
      } else if (f.multi) {
        b.sub->add_option(names, b.repeated[f.name], help);
      } else {
        b.sub->add_option(names, b.single[f.name], help);
      }
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    for (auto& [name, b] : bound) {
      if (!b.sub->parsed()) continue;
      Config c;
      if (!b.config_path.empty()) {
        c = read_config_file(b.config_path);
        if (c.command != name) {
          throw UsageError("command: config is for '" + c.command + "' but '" + name + "' was invoked");
        }
      }
      c.command = name;
      for (const auto& f : schema_for(name)) {
        const std::string opt = "--" + f.name;
        if (b.sub->get_option(opt)->count() == 0) continue;
        if (f.type == Type::flag) {
          c.params[f.name] = b.flags[f.name] ? "true" : "false";
        } else if (f.multi) {
          c.params[f.name] = b.repeated[f.name];
        } else {
          c.params[f.name] = b.single[f.name];
        }
      }
      validate_or_throw(c);
      if (!b.dump_config.empty()) write_atomic(b.dump_config, c.to_json().dump(2) + "\n");
      Outcome o = dispatch(c);
      const json report = {{"command", c.command}, {"config_hash", config_hash(c)}, {"result", o.result}};
      const std::string text = report.dump(2) + "\n";
      if (const auto path = Params(c).path("out"); !path.empty()) {
        write_atomic(path, text);
      } else {
        out << text;
      }
      return o.code;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const PrecisionShortfall& e) {
    err << "precision shortfall: " << e.what() << "\n";
    return kPrecisionShortfall;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "out of range: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace largeset::cli
