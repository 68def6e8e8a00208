// CLI11 must come before the linear-algebra headers: LAPACKE drags in C's
// <complex.h>, whose `I` macro breaks CLI11's template parameters.
#include <CLI11.hpp>

#include "fgm/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "fgm/amen.hpp"
#include "fgm/fgball.hpp"
#include "fgm/norms.hpp"
#include "fgm/projection.hpp"
#include "fgm/schur.hpp"
#include "fgm/vn.hpp"

namespace fgm {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

// "@path" arguments are file references; everything else is inline text.
std::string slurp_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1), std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read file: " + arg.substr(1));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

FiniteGroup parse_group_arg(const std::string& spec) {
  return group_from_spec(trim(slurp_arg(spec)));
}

cplx json_to_cplx(const json& v) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cplx(v[0].get<double>(), v[1].get<double>());
  throw std::runtime_error(
      "symbol entries must be numbers or [re, im] pairs");
}

// A bare JSON array of numbers or [re, im] pairs.
std::vector<cplx> parse_value_array(const std::string& text, int expected) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("symbol is not valid JSON: ") +
                             e.what());
  }
  if (!j.is_array())
    throw std::runtime_error("symbol must be a JSON array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected)
    throw std::runtime_error("symbol has " + std::to_string(j.size()) +
                             " entries, expected " + std::to_string(expected));
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(json_to_cplx(v));
  return out;
}

json cplx_json(const cplx& v) { return json::array({v.real(), v.imag()}); }

json symbol_json(const GroupSymbol& phi) {
  json a = json::array();
  for (const cplx& v : phi.values) a.push_back(cplx_json(v));
  return a;
}

void write_reports(const std::string& out_dir, const std::string& report,
                   const std::string& csv) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(std::filesystem::path(out_dir) / "report.json",
                    std::ios::binary);
    if (!f) throw std::runtime_error("cannot write report.json in " + out_dir);
    f << report;
  }
  {
    std::ofstream f(std::filesystem::path(out_dir) / "summary.csv",
                    std::ios::binary);
    if (!f) throw std::runtime_error("cannot write summary.csv in " + out_dir);
    f << csv;
  }
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

int cmd_norm(const std::string& group_spec, const std::string& symbol_arg,
             const std::string& which_csv, double tol,
             const std::string& out_dir) {
  const FiniteGroup g = parse_group_arg(group_spec);
  const GroupSymbol phi = make_symbol(
      g, parse_value_array(slurp_arg(symbol_arg), g.order));

  std::vector<std::string> which = split_csv(which_csv);
  if (which.empty() ||
      std::find(which.begin(), which.end(), "all") != which.end())
    which = {"bg", "dec", "cb"};
  for (const std::string& w : which)
    if (w != "bg" && w != "dec" && w != "cb" && w != "abelian" &&
        w != "jordan")
      throw std::runtime_error(
          "unknown norm '" + w + "' (available: bg, dec, cb, abelian, jordan)");
  const auto wants = [&](const char* w) {
    return std::find(which.begin(), which.end(), w) != which.end();
  };

  json results = json::object();
  std::ostringstream csv;
  csv << "which,value,route\n";
  double bg_val = -1.0, dec_val = -1.0, cb_val = -1.0, oracle_val = -1.0;

  const auto record = [&](const char* name, double value,
                          const NormStats* st) {
    json entry = {{"value", value}};
    std::string route = "closed-form";
    if (st != nullptr) {
      route = st->route;
      entry["route"] = st->route;
      entry["gap"] = st->gap;
      entry["iterations"] = st->iterations;
    }
    results[name] = entry;
    csv << name << ',' << fmt(value) << ',' << route << '\n';
  };

  if (wants("bg")) {
    const BgWitness bw = bg_norm_sdp(phi);
    bg_val = bw.value;
    record("bg", bw.value, &bw.stats);
  }
  if (wants("dec")) {
    const DecWitness dw = dec_norm(fourier_multiplier(phi));
    dec_val = dw.value;
    record("dec", dw.value, &dw.stats);
  }
  if (wants("cb")) {
    NormStats st;
    cb_val = cb_norm(fourier_multiplier(phi), g, &st);
    record("cb", cb_val, &st);
  }
  if (wants("abelian")) {
    if (!g.is_abelian())
      throw std::runtime_error("norm 'abelian' requires an abelian group");
    oracle_val = bg_norm_abelian(phi);
    record("abelian", oracle_val, nullptr);
  }
  if (wants("jordan")) {
    NormStats st;
    const double v = jordan_bg_norm(phi, &st);
    record("jordan", v, &st);
    if (bg_val >= 0.0 && std::abs(v - bg_val) > tol * std::max(1.0, bg_val))
      results["jordan"]["note"] = "differs from bg beyond tolerance";
  }

  // Cross-checks among whatever was requested.
  bool ok = true;
  std::ostringstream msg;
  if (cb_val >= 0.0 && dec_val >= 0.0 && cb_val > dec_val + tol) {
    ok = false;
    msg << "cb > dec + tol; ";
  }
  if (dec_val >= 0.0 && bg_val >= 0.0 &&
      std::abs(dec_val - bg_val) > tol * std::max(1.0, bg_val)) {
    ok = false;
    msg << "|dec - bg| above tolerance; ";
  }
  if (oracle_val >= 0.0 && bg_val >= 0.0 &&
      std::abs(oracle_val - bg_val) > tol * std::max(1.0, bg_val)) {
    ok = false;
    msg << "character-sum oracle disagrees with bg; ";
  }

  json out = {{"schema", "fgm-report/1"},
              {"command", "norm"},
              {"group", g.name},
              {"symbol", symbol_json(phi)},
              {"results", results},
              {"checks", {{"ok", ok}, {"message", msg.str()}}}};
  std::cout << out.dump(2) << '\n';
  write_reports(out_dir, out.dump(2) + "\n", csv.str());
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// project
// ---------------------------------------------------------------------------

int cmd_project(const std::string& group_spec, const std::string& symbol_arg,
                const std::string& which, double tol,
                const std::string& out_dir) {
  const FiniteGroup g = parse_group_arg(group_spec);
  const std::string text = slurp_arg(symbol_arg);

  ProjectionReport report;
  if (which == "fourier") {
    const GroupSymbol phi = make_symbol(g, parse_value_array(text, g.order));
    report = fourier_projection_report(fourier_multiplier(phi), g,
                                       g.name + " multiplier");
  } else if (which == "herz-schur") {
    const BiSymbol psi = parse_bisymbol(g, text);
    report = herz_schur_projection_report(psi, g.name + " bi-symbol");
  } else {
    throw std::runtime_error("--which must be 'fourier' or 'herz-schur'");
  }

  bool ok = report.cb_after <= report.cb_before + tol && report.cp_preserved;
  std::ostringstream msg;
  if (report.cb_after > report.cb_before + tol)
    msg << "projection increased the cb norm; ";
  if (!report.cp_preserved) msg << "complete positivity lost; ";
  if (which == "fourier" && !report.fixed_point) {
    ok = false;
    msg << "multiplier input not reproduced; ";
  }

  json out = {{"schema", "fgm-report/1"},
              {"command", "project"},
              {"group", g.name},
              {"which", which},
              {"report", json::parse(serialize_projection_report(report))},
              {"checks", {{"ok", ok}, {"message", msg.str()}}}};
  std::ostringstream csv;
  csv << "which,cb_before,cb_after,cp_preserved,fixed_point\n"
      << which << ',' << fmt(report.cb_before) << ',' << fmt(report.cb_after)
      << ',' << (report.cp_preserved ? "true" : "false") << ','
      << (report.fixed_point ? "true" : "false") << '\n';
  std::cout << out.dump(2) << '\n';
  write_reports(out_dir, out.dump(2) + "\n", csv.str());
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// folner
// ---------------------------------------------------------------------------

struct GeneratorLetter {
  char letter;
  BallPoint point;
  int length;  // word length of the generator
};

std::vector<GeneratorLetter> family_letters(const std::string& family) {
  if (family == "heisenberg-Z")
    return {{'x', {1, 0, 0}, 1}, {'y', {0, 1, 0}, 1}, {'z', {0, 0, 1}, 4}};
  if (family == "lamplighter-Z2") return {{'a', {0, 0}, 1}, {'t', {1}, 1}};
  if (family.rfind("free-abelian-Z", 0) == 0) {
    const int d = std::stoi(family.substr(14));
    const char names[] = "xyzwuv";
    std::vector<GeneratorLetter> out;
    for (int i = 0; i < d; ++i) {
      BallPoint p(d, 0);
      p[i] = 1;
      out.push_back({names[i], p, 1});
    }
    return out;
  }
  throw std::runtime_error("unknown family: " + family);
}

int cmd_folner(const std::string& family_arg, int radius,
               const std::string& generators, const std::string& out_dir) {
  std::string family = family_arg;
  if (family == "heisenberg") family = "heisenberg-Z";
  if (family == "lamplighter") family = "lamplighter-Z2";
  if (radius < 1) throw std::runtime_error("--radius must be >= 1");

  const std::vector<GeneratorLetter> letters = family_letters(family);
  std::string requested = generators;
  if (requested.empty())
    for (const GeneratorLetter& l : letters) requested += l.letter;

  std::vector<GeneratorLetter> chosen;
  int max_len = 1;
  for (char c : requested) {
    bool found = false;
    for (const GeneratorLetter& l : letters)
      if (l.letter == c) {
        chosen.push_back(l);
        max_len = std::max(max_len, l.length);
        found = true;
      }
    if (!found)
      throw std::runtime_error(std::string("unknown generator letter '") + c +
                               "' for " + family);
  }

  // One carrier ball large enough for every conjugation: s^-1 v s adds at
  // most twice the generator length to the word length of v.
  const FgBall carrier_ball = enumerate_ball(family, radius + 2 * max_len);
  const Carrier carrier(carrier_ball);
  std::vector<int> gen_index(chosen.size());
  for (size_t i = 0; i < chosen.size(); ++i) {
    gen_index[i] = carrier_ball.index_of(chosen[i].point);
    if (gen_index[i] < 0)
      throw std::logic_error("generator missing from the carrier ball");
  }

  std::ostringstream csv;
  csv << "radius,generator,ratio\n";
  json rows = json::array();
  for (int r = 1; r <= radius; ++r) {
    std::vector<int> v;
    for (int i = 0; i < static_cast<int>(carrier_ball.metric.size()); ++i)
      if (carrier_ball.metric[i] <= r) v.push_back(i);
    for (size_t i = 0; i < chosen.size(); ++i) {
      const double ratio = inner_folner_ratio(carrier, v, gen_index[i]);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", ratio);
      csv << r << ',' << chosen[i].letter << ',' << buf << '\n';
      rows.push_back({{"radius", r},
                      {"generator", std::string(1, chosen[i].letter)},
                      {"ratio", ratio}});
    }
  }

  json out = {{"schema", "fgm-report/1"},
              {"command", "folner"},
              {"family", family},
              {"rows", rows}};
  std::cout << csv.str();
  write_reports(out_dir, out.dump(2) + "\n", csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// group
// ---------------------------------------------------------------------------

int cmd_group(const std::string& spec, const std::string& which,
              const std::string& out_dir) {
  if (which != "info" && which != "table")
    throw std::runtime_error("--which must be 'info' or 'table'");
  const FiniteGroup g = parse_group_arg(spec);
  const int n = g.order;

  int classes = 0;
  std::vector<bool> seen(n, false);
  for (int a = 0; a < n; ++a) {
    if (seen[a]) continue;
    ++classes;
    for (int s = 0; s < n; ++s) seen[g.conjugate(s, a)] = true;
  }
  int center = 0;
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b)
      central = g.op(a, b) == g.op(b, a);
    if (central) ++center;
  }

  json labels = json::array();
  json orders = json::array();
  for (int a = 0; a < n; ++a) {
    labels.push_back(g.label(a));
    orders.push_back(g.element_order(a));
  }

  json out = {{"schema", "fgm-report/1"}, {"command", "group"},
              {"name", g.name},           {"order", n},
              {"abelian", g.is_abelian()}, {"labels", labels},
              {"element_orders", orders},  {"conjugacy_classes", classes},
              {"center_size", center}};
  if (n <= 16)
    out["subgroup_count"] = enumerate_subgroups(g).size();
  if (which == "table") out["table"] = json::parse(serialize_group(g));

  std::ostringstream csv;
  csv << "name,order,abelian,conjugacy_classes,center_size\n"
      << g.name << ',' << n << ',' << (g.is_abelian() ? "true" : "false")
      << ',' << classes << ',' << center << '\n';
  std::cout << out.dump(2) << '\n';
  write_reports(out_dir, out.dump(2) + "\n", csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify plumbing
// ---------------------------------------------------------------------------

struct SuiteCounts {
  int symbols, pd, transference;
  int kappa_fixed, kappa_cp, kappa_contractive;
  int qhs, tuples, lemma, layer;
  int smooth_radius, smooth_samples, disco_rmax;
};

int registry_index(const std::string& id) {
  const auto& reg = theorem_registry();
  for (size_t i = 0; i < reg.size(); ++i)
    if (reg[i].first == id) return static_cast<int>(i);
  return -1;
}

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& opts) {
  // Resolve the theorem list.
  std::vector<std::string> which = opts.which;
  if (which.empty())
    for (const auto& [id, desc] : theorem_registry()) which.push_back(id);
  for (const std::string& id : which)
    if (!is_registry_id(id)) {
      std::string known;
      for (const auto& [rid, desc] : theorem_registry())
        known += (known.empty() ? "" : ", ") + rid;
      throw std::invalid_argument("unknown theorem id '" + id +
                                  "' (registry: " + known + ")");
    }
  const auto want = [&](const char* id) {
    return std::find(which.begin(), which.end(), id) != which.end();
  };

  // Resolve the suite.
  std::vector<std::string> specs;
  SuiteCounts c{};
  if (opts.suite == "default") {
    specs = {"cyclic:2",  "cyclic:3",    "cyclic:4",    "cyclic:6",
             "cyclic:8",  "symmetric:3", "dihedral:4",  "quaternion:8"};
    c = {5, 5, 3, 4, 4, 6, 4, 5, 3, 15, 3, 6, 25};
  } else if (opts.suite == "quick") {
    specs = {"cyclic:2", "cyclic:3", "cyclic:4"};
    c = {3, 3, 2, 3, 3, 4, 3, 4, 2, 10, 2, 4, 10};
  } else {
    specs = split_csv(opts.suite);
    if (specs.empty())
      throw std::invalid_argument("--suite names no groups");
    c = {5, 5, 3, 4, 4, 6, 4, 5, 3, 15, 3, 6, 25};
  }
  std::vector<FiniteGroup> groups;
  groups.reserve(specs.size());
  for (const std::string& s : specs) groups.push_back(group_from_spec(s));

  // Work items with precomputed seeds; results merge in item order, so the
  // worker count never affects the report.
  std::vector<std::function<std::vector<CheckRow>()>> items;
  const std::uint64_t seed = opts.seed;
  const double tol = opts.tol;
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const FiniteGroup& g = groups[gi];
    if (want("dec-eq-bg") || want("cb-eq-dec")) {
      const std::uint64_t s = derive_seed(seed, registry_index("dec-eq-bg"), gi);
      items.emplace_back([&g, n = c.symbols, s, tol] {
        return check_norm_isometries(g, n, s, tol);
      });
    }
    if (want("pd-norm")) {
      const std::uint64_t s = derive_seed(seed, registry_index("pd-norm"), gi);
      items.emplace_back([&g, n = c.pd, s, tol] {
        return std::vector<CheckRow>{check_pd_norm(g, n, s, tol)};
      });
    }
    if (want("transference")) {
      const std::uint64_t s =
          derive_seed(seed, registry_index("transference"), gi);
      items.emplace_back([&g, n = c.transference, s, tol] {
        return std::vector<CheckRow>{check_transference(g, n, s, tol)};
      });
    }
    if (want("kappa-contractive") || want("kappa-cp")) {
      const std::uint64_t s =
          derive_seed(seed, registry_index("kappa-contractive"), gi);
      items.emplace_back([&g, f = c.kappa_fixed, p = c.kappa_cp,
                          k = c.kappa_contractive, s, tol] {
        return check_kappa(g, f, p, k, s, tol);
      });
    }
    if (want("q-herz-schur")) {
      const std::uint64_t s =
          derive_seed(seed, registry_index("q-herz-schur"), gi);
      items.emplace_back([&g, n = c.qhs, s, tol] {
        return std::vector<CheckRow>{check_q_herz_schur(g, n, s, tol)};
      });
    }
    if (want("mxyT-pairing")) {
      const std::uint64_t s =
          derive_seed(seed, registry_index("mxyT-pairing"), gi);
      items.emplace_back([&g, n = c.tuples, s] {
        return std::vector<CheckRow>{check_mxyT_pairing(g, n, s, 1e-9)};
      });
    }
    if (want("lemma-cb-bound")) {
      const std::uint64_t s =
          derive_seed(seed, registry_index("lemma-cb-bound"), gi);
      items.emplace_back([&g, n = c.lemma, s, tol] {
        return std::vector<CheckRow>{check_lemma_cb_bound(g, n, s, tol)};
      });
    }
    if (want("disco-equality")) {
      items.emplace_back([&g] {
        return std::vector<CheckRow>{check_disco_equality(g)};
      });
    }
    if (want("layer-cake")) {
      const std::uint64_t s = derive_seed(seed, registry_index("layer-cake"), gi);
      items.emplace_back([&g, n = c.layer, s] {
        const Carrier carrier(g);
        return std::vector<CheckRow>{check_layer_cake(g.name, carrier, n, s)};
      });
    }
  }
  if (want("disco-equality")) {
    items.emplace_back([rmax = c.disco_rmax] {
      return std::vector<CheckRow>{check_disco_interval(rmax, 2.0)};
    });
  }
  if (want("smoothing-bound")) {
    const std::uint64_t s =
        derive_seed(seed, registry_index("smoothing-bound"), 9999);
    items.emplace_back([r = c.smooth_radius, n = c.smooth_samples, s] {
      return std::vector<CheckRow>{check_smoothing(r, n, s)};
    });
  }

  // Run the pool.
  std::vector<std::vector<CheckRow>> results(items.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || items.size() <= 1) {
    for (size_t i = 0; i < items.size(); ++i) results[i] = items[i]();
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(items.size());
    std::vector<std::thread> workers;
    const int nw = std::min<int>(jobs, static_cast<int>(items.size()));
    for (int w = 0; w < nw; ++w)
      workers.emplace_back([&] {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= items.size()) return;
          try {
            results[i] = items[i]();
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  VerifyOutcome out;
  for (const auto& rows : results)
    for (const CheckRow& r : rows)
      if (!is_registry_id(r.id) || want(r.id.c_str())) out.rows.push_back(r);
  out.all_pass = std::all_of(out.rows.begin(), out.rows.end(),
                             [](const CheckRow& r) { return r.pass; });
  out.kappa_requested = want("kappa-contractive");

  // report.json (schema-versioned, no timestamps).
  json checks = json::array();
  int failed = 0;
  for (const CheckRow& r : out.rows) {
    if (!r.pass) ++failed;
    checks.push_back({{"id", r.id},
                      {"target", r.target},
                      {"count", r.count},
                      {"status", r.pass ? "pass" : "fail"},
                      {"max_discrepancy", r.max_discrepancy},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  }
  json registry = json::object();
  for (const auto& [id, desc] : theorem_registry())
    if (want(id.c_str())) registry[id] = desc;
  json report = {
      {"schema", "fgm-report/1"},
      {"command", "verify"},
      {"settings",
       {{"suite", opts.suite}, {"seed", opts.seed}, {"tol", opts.tol},
        {"which", which}}},
      {"registry", registry},
      {"checks", checks},
      {"summary",
       {{"total", out.rows.size()},
        {"passed", out.rows.size() - failed},
        {"failed", failed}}}};
  out.report_json = report.dump(2) + "\n";
  out.summary_csv = check_rows_csv(out.rows);

  // Human table.
  std::ostringstream tbl;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %-16s %-6s %-12s %-12s %s\n",
                "check", "target", "status", "max-disc", "tolerance", "n");
  tbl << line;
  for (const CheckRow& r : out.rows) {
    std::snprintf(line, sizeof line, "%-18s %-16s %-6s %-12.3e %-12.3e %d\n",
                  r.id.c_str(), r.target.c_str(), r.pass ? "pass" : "FAIL",
                  r.max_discrepancy, r.tolerance, r.count);
    tbl << line;
  }
  if (out.kappa_requested) {
    tbl << "\nkappa projection statistics\n";
    std::snprintf(line, sizeof line, "  %-16s %-18s %s\n", "group",
                  "max-cb-expansion", "cp-violations");
    tbl << line;
    for (const CheckRow& r : out.rows) {
      if (r.id != "kappa-contractive") continue;
      std::string violations = "0";
      for (const CheckRow& q : out.rows)
        if (q.id == "kappa-cp" && q.target == r.target) {
          const auto pos = q.detail.find("cp-violations=");
          if (pos != std::string::npos) {
            size_t end = pos + 14;
            while (end < q.detail.size() && std::isdigit(q.detail[end])) ++end;
            violations = q.detail.substr(pos + 14, end - (pos + 14));
          }
        }
      std::snprintf(line, sizeof line, "  %-16s %-18.3e %s\n",
                    r.target.c_str(), r.max_discrepancy, violations.c_str());
      tbl << line;
    }
  }
  if (!out.all_pass) {
    tbl << "\nFAILURES (check id doubles as the anchor in the registry)\n";
    for (const CheckRow& r : out.rows) {
      if (r.pass) continue;
      std::string desc;
      for (const auto& [id, d] : theorem_registry())
        if (id == r.id) desc = d;
      std::snprintf(line, sizeof line,
                    "  %s on %s: discrepancy %.3e vs tolerance %.3e\n",
                    r.id.c_str(), r.target.c_str(), r.max_discrepancy,
                    r.tolerance);
      tbl << line;
      if (!desc.empty()) tbl << "    [" << r.id << "] " << desc << '\n';
      tbl << "    " << r.detail << '\n';
    }
  } else {
    tbl << "\nall " << out.rows.size() << " checks passed\n";
  }
  out.text_table = tbl.str();
  return out;
}

namespace {

int cmd_verify(const std::vector<std::string>& positional,
               const std::string& which_flag, const std::string& suite,
               std::uint64_t seed, double tol, const std::string& out_dir,
               int jobs) {
  std::vector<std::string> tokens = split_csv(which_flag);
  tokens.insert(tokens.end(), positional.begin(), positional.end());

  VerifyOptions opts;
  opts.suite = suite;
  opts.seed = seed;
  opts.tol = tol;
  opts.jobs = jobs;
  bool all = tokens.empty();
  for (const std::string& t : tokens) {
    if (t == "all" || t == "default") {
      all = true;
    } else if (t == "kappa") {
      opts.which.push_back("kappa-contractive");
      opts.which.push_back("kappa-cp");
    } else {
      opts.which.push_back(t);
    }
  }
  if (all) opts.which.clear();

  // De-duplicate, preserving registry order.
  if (!opts.which.empty()) {
    std::vector<std::string> ordered;
    for (const auto& [id, desc] : theorem_registry())
      if (std::find(opts.which.begin(), opts.which.end(), id) !=
          opts.which.end())
        ordered.push_back(id);
    for (const std::string& t : opts.which)
      if (!is_registry_id(t)) ordered.push_back(t);  // reported by run_verify
    opts.which = ordered;
  }

  const VerifyOutcome outcome = run_verify(opts);
  std::cout << outcome.text_table;
  write_reports(out_dir, outcome.report_json, outcome.summary_csv);
  return outcome.all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"fgm: a numerical laboratory for Fourier and Schur "
               "multipliers on finite groups"};
  app.require_subcommand(1);

  auto* norm = app.add_subcommand(
      "norm", "compute norms of a Fourier symbol (bg, dec, cb, oracles)");
  std::string n_group, n_symbol, n_which = "bg,dec,cb", n_out;
  double n_tol = 1e-4;
  norm->add_option("--group", n_group, "group spec (family, JSON, or @file)")
      ->required();
  norm->add_option("--symbol", n_symbol,
                   "symbol values as JSON array (inline or @file)")
      ->required();
  norm->add_option("--which", n_which,
                   "comma list from bg, dec, cb, abelian, jordan");
  norm->add_option("--tol", n_tol, "cross-check tolerance");
  norm->add_option("--out", n_out, "directory for report.json + summary.csv");

  auto* project = app.add_subcommand(
      "project", "compress a multiplier onto Fourier or Herz-Schur form");
  std::string p_group, p_symbol, p_which = "fourier", p_out;
  double p_tol = 1e-4;
  project->add_option("--group", p_group, "group spec")->required();
  project
      ->add_option("--symbol", p_symbol,
                   "symbol (array) or bi-symbol (2-D array), inline or @file")
      ->required();
  project->add_option("--which", p_which, "'fourier' or 'herz-schur'");
  project->add_option("--tol", p_tol, "contraction tolerance");
  project->add_option("--out", p_out, "report directory");

  auto* verify = app.add_subcommand(
      "verify", "run the theorem checks over a group suite");
  std::vector<std::string> v_pos;
  std::string v_which, v_suite = "default", v_out = ".";
  std::uint64_t v_seed = 1;
  double v_tol = 1e-4;
  int v_jobs = 1;
  verify->add_option("ids", v_pos,
                     "theorem ids ('kappa' expands to the projection pair)");
  verify->add_option("--which", v_which, "comma-separated theorem ids");
  verify->add_option("--suite", v_suite,
                     "'default', 'quick', or comma-separated group specs");
  verify->add_option("--seed", v_seed, "ensemble seed");
  verify->add_option("--tol", v_tol, "norm-comparison tolerance");
  verify->add_option("--out", v_out, "report directory (default: .)");
  verify->add_option("--jobs", v_jobs, "worker threads");

  auto* folner = app.add_subcommand(
      "folner", "inner Folner ratios of balls in a finitely generated group");
  std::string f_family, f_gens, f_out;
  int f_radius = 4;
  folner
      ->add_option("--family", f_family,
                   "heisenberg | lamplighter | free-abelian-Z<d>")
      ->required();
  folner->add_option("--radius", f_radius, "largest ball radius");
  folner->add_option("--generators", f_gens,
                     "letters to conjugate by (default: all)");
  folner->add_option("--out", f_out, "report directory");

  auto* group = app.add_subcommand("group", "describe a finite group");
  std::string g_spec, g_which = "info", g_out;
  group->add_option("--group", g_spec, "group spec")->required();
  group->add_option("--which", g_which, "'info' or 'table'");
  group->add_option("--out", g_out, "report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (norm->parsed())
      return cmd_norm(n_group, n_symbol, n_which, n_tol, n_out);
    if (project->parsed())
      return cmd_project(p_group, p_symbol, p_which, p_tol, p_out);
    if (verify->parsed())
      return cmd_verify(v_pos, v_which, v_suite, v_seed, v_tol, v_out, v_jobs);
    if (folner->parsed())
      return cmd_folner(f_family, f_radius, f_gens, f_out);
    if (group->parsed()) return cmd_group(g_spec, g_which, g_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace fgm
