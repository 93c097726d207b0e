#include "zsm_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zsm/chains.hpp"
#include "zsm/elasticity.hpp"
#include "zsm/structure.hpp"
#include "zsm/transfer.hpp"

namespace zsm::cli {

using json = nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Int json_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<Int>();
}

GroundSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("ground spec must be a JSON object");
  std::set<Int> finite;
  std::vector<Progression> aps;
  for (auto& [key, value] : j.items())
    if (key != "finite" && key != "aps") throw InvalidInput("unknown ground spec field '" + key + "'");
  if (j.contains("finite")) {
    if (!j["finite"].is_array()) throw InvalidInput("'finite' must be an array");
    for (const auto& v : j["finite"]) finite.insert(json_int(v, "finite member"));
  }
  if (j.contains("aps")) {
    if (!j["aps"].is_array()) throw InvalidInput("'aps' must be an array");
    for (const auto& p : j["aps"]) {
      if (!p.is_object() || !p.contains("start") || !p.contains("step"))
        throw InvalidInput("progressions need 'start' and 'step'");
      aps.push_back({json_int(p["start"], "start"), json_int(p["step"], "step")});
    }
  }
  return GroundSpec(std::move(finite), std::move(aps));
}

std::vector<Int> finite_members(const GroundSpec& g) {
  if (!g.is_finite()) throw InvalidInput("this command needs a finite ground set");
  return g.members();
}

json lengths_json(const LengthSet& l) { return json(l.lengths); }

json strings(const std::vector<Factorization>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(z.to_string());
  return a;
}

json chain_json(const Chain& c) {
  return {{"steps", strings(c.steps)},
          {"max_step", c.max_step},
          {"monotone", to_string(c.monotone)},
          {"declared_bound", c.declared_bound},
          {"note", c.note}};
}

struct Report {
  json inputs = json::object();
  json results = json::object();
  std::map<std::string, std::string> labels;
  bool complete = true;

  void put(const std::string& key, json value, const char* label = nullptr) {
    results[key] = std::move(value);
    if (label) labels[key] = label;
  }
};

json finish(const std::string& command, const Report& r, const Budget& budget) {
  json labels = json::object();
  for (auto& [key, value] : r.results.items()) {
    auto it = r.labels.find(key);
    labels[key] = it != r.labels.end() ? it->second : (r.complete ? "exact" : "lower bound");
  }
  return {{"schema", kSchema},
          {"version", kVersion},
          {"command", command},
          {"inputs", r.inputs},
          {"results", r.results},
          {"labels", labels},
          {"complete", r.complete},
          {"budget", {{"max_nodes", budget.max_nodes}, {"max_results", budget.max_results}}}};
}

struct Options {
  std::string ground, spec, element, which, lengths, deltas, negatives, params, manifest, mode;
  Count k = 1, n = 0, d = 0, bound = 0;
  std::size_t start = 0, target = 0;
  bool lengths_only = false, has_k = false, concurrent = false;
};

AtomSet atoms_over(const Options& o, const Sequence& b, const Budget& budget) {
  if (o.ground.empty()) return atoms_for_element(b, budget);
  auto g = finite_members(parse_ground(o.ground));
  for (Int v : b.support())
    if (!std::binary_search(g.begin(), g.end(), v))
      throw InvalidInput("element term " + std::to_string(v) + " is outside the ground set");
  return enumerate_atoms(g, budget);
}

std::map<std::string, Int> parse_params(const std::string& text) {
  std::map<std::string, Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("parameter '" + item + "' is not key=value");
    auto vals = parse_int_list(item.substr(eq + 1));
    if (vals.size() != 1) throw InvalidInput("parameter '" + item + "' needs one integer");
    out[trim(item.substr(0, eq))] = vals.front();
  }
  return out;
}

Int need(const std::map<std::string, Int>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw InvalidInput("missing parameter '" + key + "'");
  return it->second;
}

json family_json(const FamilyInstance& f) {
  json params = json::object(), atoms = json::object(), facts = json::object(), claims = json::array();
  for (auto& [k, v] : f.parameters) params[k] = v;
  for (auto& [k, v] : f.atoms) atoms[k] = v.to_string();
  for (auto& [k, v] : f.factorizations) facts[k] = v.to_string();
  for (const auto& c : f.claims)
    claims.push_back({{"formula", c.formula}, {"expected", c.expected}, {"observed", c.observed}, {"holds", c.holds}});
  return {{"name", f.name},       {"parameters", params},          {"element", f.element.to_string()},
          {"atoms", atoms},       {"factorizations", facts},       {"claims", claims},
          {"unguaranteed", f.unguaranteed}, {"validation", f.validation}};
}

FamilyInstance build_family(const std::string& name, const std::map<std::string, Int>& p, const Budget& budget) {
  if (name == "lem1") return family_lem1(need(p, "d"), need(p, "e"), need(p, "k"));
  if (name == "lem2") return family_lem2(need(p, "d"), need(p, "e"), need(p, "f"), need(p, "l"), need(p, "k"));
  if (name == "prop2") return family_prop2(need(p, "d"), need(p, "k"), budget);
  if (name == "example6") return family_example6(need(p, "d"), need(p, "e"), need(p, "k"), need(p, "l"), budget);
  if (name == "prop46") return family_prop46(need(p, "a1"), need(p, "a2"), need(p, "b"), need(p, "n"));
  if (name == "prop71") return family_prop71(need(p, "d1"), need(p, "d2"), need(p, "n"), need(p, "m"));
  throw InvalidInput("unknown family '" + name + "'");
}

TwoSidedSpec parse_two_sided(const std::string& text) {
  std::string t = trim(text);
  if (t.empty() || t == "nonzero") return TwoSidedSpec::nonzero_integers();
  json j = parse_json(t, "two-sided spec");
  if (!j.is_object() || !j.contains("positive") || !j.contains("negative_magnitudes"))
    throw InvalidInput("two-sided spec needs 'positive' and 'negative_magnitudes'");
  return TwoSidedSpec{spec_from_json(j["positive"]), spec_from_json(j["negative_magnitudes"])};
}

Factorization pick(const FactorizationSet& all, std::size_t i, const char* what) {
  if (i >= all.all.size())
    throw InvalidInput(std::string(what) + " index " + std::to_string(i) + " out of range (" +
                       std::to_string(all.all.size()) + " factorizations)");
  return all.all[i];
}

// One subcommand; fills r.
void dispatch(const std::string& cmd, const Options& o, const Budget& budget, Report& r) {
  if (cmd == "atoms") {
    auto g = finite_members(parse_ground(o.ground));
    r.inputs = {{"ground", g}};
    AtomSet a = enumerate_atoms(g, budget);
    json atoms = json::array();
    for (const auto& u : a.atoms) atoms.push_back(u.to_string());
    r.put("ground", a.ground);
    r.put("atoms", atoms);
    r.put("count", a.atoms.size());
    r.put("davenport", a.davenport());
    return;
  }
  if (cmd == "factorize") {
    Sequence b = parse_element(o.element);
    r.inputs = {{"element", b.to_string()}, {"ground", o.ground}};
    AtomSet atoms = atoms_over(o, b, budget);
    r.put("element", b.to_string(), "exact");
    if (o.lengths_only && !o.has_k) {
      LengthSet l = length_set(b, atoms, budget);
      r.complete = l.complete;
      r.put("lengths", lengths_json(l));
      r.put("delta", delta_set(l));
      if (!l.empty()) r.put("elasticity", elasticity_of(l).to_string());
      r.put("complete", l.complete, "exact");
      return;
    }
    FactorizationSet all = o.has_k ? z_k(b, atoms, o.k, budget) : factorizations(b, atoms, budget);
    r.complete = all.complete;
    LengthSet l = o.has_k ? factorizations(b, atoms, budget).lengths() : all.lengths();
    r.put("complete", all.complete, "exact");
    r.put("count", all.size());
    r.put("lengths", lengths_json(l));
    r.put("delta", delta_set(l));
    if (!l.empty()) r.put("elasticity", elasticity_of(l).to_string());
    if (!o.lengths_only) r.put("factorizations", strings(all.all));
    return;
  }
  if (cmd == "invariants") {
    Sequence b = parse_element(o.element);
    r.inputs = {{"element", b.to_string()}, {"ground", o.ground}, {"which", o.which}};
    BlockMonoid m(atoms_over(o, b, budget));
    FactorizationSet all = complete_factorizations(b, m, budget);
    r.put("lengths", lengths_json(all.lengths()));
    std::stringstream ss(o.which.empty() ? "c,cmon,delta" : o.which);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "c") r.put("catenary", catenary(all));
      else if (item == "cmon") r.put("monotone_catenary", monotone_catenary(all));
      else if (item == "delta") r.put("successive_distance", delta_of(all));
      else if (item.rfind("tame:", 0) == 0) r.put(item, tame_degree(all, parse_element(item.substr(5))));
      else if (!item.empty()) throw InvalidInput("unknown invariant '" + item + "'");
    }
    return;
  }
  if (cmd == "elasticity") {
    GroundSpec spec = parse_ground(o.spec);
    r.inputs = {{"spec", spec.to_string()}};
    ElasticityReport e = exact_elasticity(spec, budget);
    r.complete = e.complete;
    r.put("rho", e.rho.to_string());
    if (e.accepted == "true") r.put("accepted", true, "exact");
    else if (e.accepted == "false") r.put("accepted", false, "exact");
    else r.put("accepted", "unknown", "exact");
    r.put("route", e.route, "exact");
    r.put("kappa_classes", e.kappa_classes, "exact");
    r.put("generators", e.generators, "exact");
    r.put("pair_atoms", e.pair_atoms);
    return;
  }
  if (cmd == "rhok") {
    auto g = finite_members(parse_ground(o.ground));
    r.inputs = {{"ground", g}, {"k", o.k}};
    RhoK v = rho_k_report(g, o.k, budget);
    r.put("k", v.k);
    r.put("rho", v.rho);
    r.put("lambda", v.lambda);
    r.put("union", lengths_json(v.union_of_lengths));
    r.put("elements", v.elements);
    return;
  }
  if (cmd == "transfer") {
    Sequence b = parse_element(o.element);
    FidelityReport f;
    if (o.mode == "cyclic") {
      r.inputs = {{"mode", o.mode}, {"element", b.to_string()}, {"n", o.n}};
      f = verify_cyclic_fidelity(b, o.n, budget);
      std::vector<Int> pos = b.positive_part().support();
      CyclicClassGroup g = cyclic_class_group(pos, o.n);
      r.put("class_group", {{"modulus", g.modulus}, {"generator", g.generator}, {"order", g.order}, {"full", g.full}});
    } else {
      r.inputs = {{"mode", o.mode}, {"element", b.to_string()}, {"d", o.d}};
      f = verify_psi_fidelity(b, o.d, budget);
    }
    r.put("image", f.target.to_string());
    r.put("source_lengths", lengths_json(f.source_lengths));
    r.put("target_lengths", lengths_json(f.target_lengths));
    r.put("shift", f.shift);
    r.put("lengths_ok", f.lengths_ok);
    r.put("distances_ok", f.distances_ok);
    r.put("image_ok", f.image_ok);
    r.put("mismatches", f.mismatches);
    r.put("passed", f.passed());
    return;
  }
  if (cmd == "structure-check") {
    GroundSpec spec = parse_ground(o.spec);
    r.inputs = {{"spec", spec.to_string()}};
    r.put("condition", structure_condition(spec));
    return;
  }
  if (cmd == "aamp") {
    auto ls = parse_int_list(o.lengths);
    auto ds = parse_int_list(o.deltas);
    r.inputs = {{"lengths", ls}, {"deltas", ds}, {"bound", o.bound}};
    LengthSet l(std::vector<Count>(ls.begin(), ls.end()));
    auto w = recognize_aamp(l, std::vector<Count>(ds.begin(), ds.end()), o.bound);
    r.put("recognized", w.has_value());
    if (w)
      r.put("witness", {{"y", w->y},
                        {"d", w->d},
                        {"period", w->period},
                        {"core", w->core},
                        {"initial", w->initial},
                        {"tail", w->tail},
                        {"bound", w->bound},
                        {"replayed", replay_aamp(*w, l)}});
    else
      r.put("witness", nullptr);
    return;
  }
  if (cmd == "family") {
    auto p = parse_params(o.params);
    r.inputs = {{"name", o.mode}, {"params", p}};
    FamilyInstance f = build_family(o.mode, p, budget);
    validate_family(f);
    r.put("instance", family_json(f));
    r.put("validated", true);
    return;
  }
  if (cmd == "chains") {
    if (o.mode == "rel-davenport") {
      auto neg = parse_int_list(o.negatives);
      r.inputs = {{"mode", o.mode}, {"negatives", neg}};
      json ea = json::array();
      for (const auto& p : e_atoms(neg, budget)) ea.push_back({p.left.to_string(), p.right.to_string()});
      r.put("e_atoms", ea);
      r.put("relative_davenport", relative_davenport(neg, budget));
      return;
    }
    Sequence b = parse_element(o.element);
    r.inputs = {{"mode", o.mode}, {"element", b.to_string()}, {"ground", o.ground}, {"start", o.start}};
    AtomSet atoms = atoms_over(o, b, budget);
    if (o.mode == "upsilon") {
      r.put("upsilon", strings(upsilon(b, atoms, budget).all));
      return;
    }
    FactorizationSet all = complete_factorizations(b, BlockMonoid(atoms), budget);
    Factorization z = pick(all, o.start, "start");
    if (o.mode == "to-upsilon") {
      Chain c = chain_to_upsilon(b, z, atoms, budget);
      validate_chain(c);
      r.put("chain", chain_json(c));
    } else if (o.mode == "equal-plus") {
      r.inputs["target"] = o.target;
      Chain c = equal_plus_chain(b, z, pick(all, o.target, "target"), atoms, budget);
      validate_chain(c);
      r.put("chain", chain_json(c));
    } else {
      M2Result m2 = m2_chain(b, z, atoms, budget);
      if (m2.chain) {
        validate_chain(*m2.chain);
        r.put("chain", chain_json(*m2.chain));
      } else {
        r.put("witness", {{"subset", m2.witness->subset}, {"factorization", m2.witness->z.to_string()}});
      }
    }
    return;
  }
  if (cmd == "witness") {
    TwoSidedSpec spec = parse_two_sided(o.spec);
    r.inputs = {{"kind", o.mode}, {"spec", spec.positive.to_string() + " | -" + spec.negative_magnitudes.to_string()},
                {"n", o.n}};
    TameGrowthWitness w = tame_growth_witness(spec, o.n, budget);
    json j = {{"a", w.a},
              {"b", w.b},
              {"a2", w.a2},
              {"b1", w.b1},
              {"gap_constant", w.gap_constant},
              {"atom", w.u.to_string()},
              {"element", w.element.to_string()},
              {"split", w.split.to_string()},
              {"holds", w.holds},
              {"certificate", w.certificate}};
    j["through_atom"] = w.through_u ? json(w.through_u->to_string()) : json(nullptr);
    j["lengths"] = w.lengths ? lengths_json(*w.lengths) : json(nullptr);
    j["tame"] = w.tame ? json(*w.tame) : json(nullptr);
    r.put("witness", j, w.enumerated ? "exact" : "lower bound");
    return;
  }
  throw InvalidInput("unknown command '" + cmd + "'");
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string s = v.dump();
  if (s.find(',') == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void emit(const json& report, bool csv, std::ostream& out) {
  if (!csv) {
    out << report.dump(2) << '\n';
    return;
  }
  out << "key,value,label\n";
  for (auto& [key, value] : report["results"].items())
    out << key << ',' << csv_cell(value) << ',' << report["labels"][key].get<std::string>() << '\n';
}

json read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json m = parse_json(ss.str(), "manifest");
  if (m.is_array()) m = {{"jobs", m}};
  if (!m.is_object() || !m.contains("jobs") || !m["jobs"].is_array())
    throw InvalidInput("manifest must hold a 'jobs' array");
  return m;
}

struct JobResult {
  int code = 0;
  std::string out;
  std::string err;
};

JobResult run_job(const json& job) {
  JobResult r;
  std::ostringstream out, err;
  std::vector<std::string> args;
  if (job.is_object() && job.contains("args") && job["args"].is_array()) {
    for (const auto& a : job["args"]) {
      if (!a.is_string()) {
        r.code = invalid_input;
        r.err = "job args must be strings";
        return r;
      }
      args.push_back(a.get<std::string>());
    }
  } else {
    r.code = invalid_input;
    r.err = "job must be an object with an 'args' array";
    return r;
  }
  if (!args.empty() && args.front() == "batch") {
    r.code = invalid_input;
    r.err = "nested batch jobs are not allowed";
    return r;
  }
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int run_batch(const Options& o, bool concurrent_flag, std::ostream& out) {
  json m = read_manifest(o.manifest);
  bool concurrent = concurrent_flag || m.value("concurrent", false);
  const auto& jobs = m["jobs"];
  std::vector<JobResult> results(jobs.size());
  if (concurrent) {
    std::vector<std::future<JobResult>> fut;
    for (const auto& j : jobs) fut.push_back(std::async(std::launch::async, run_job, j));
    for (std::size_t i = 0; i < fut.size(); ++i) results[i] = fut[i].get();
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = run_job(jobs[i]);
  }
  int worst = 0;
  json arr = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    worst = std::max(worst, results[i].code);
    json entry = {{"index", i}, {"exit", results[i].code}};
    json parsed = json::parse(results[i].out, nullptr, false);
    entry["report"] = parsed.is_discarded() ? json(results[i].out) : parsed;
    if (!results[i].err.empty()) entry["stderr"] = results[i].err;
    arr.push_back(entry);
  }
  json report = {{"schema", kSchema},       {"version", kVersion}, {"command", "batch"},
                 {"inputs", {{"manifest", o.manifest}, {"concurrent", concurrent}}},
                 {"jobs", arr},             {"exit", worst}};
  out << report.dump(2) << '\n';
  return worst;
}

}  // namespace

std::vector<Int> parse_int_list(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && (t.front() == '[' || t.front() == '{')) {
    if (t.size() < 2 || (t.back() != ']' && t.back() != '}')) throw InvalidInput("unbalanced brackets in '" + text + "'");
    t = t.substr(1, t.size() - 2);
  }
  std::vector<Int> out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    Int v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("'" + item + "' is not an integer");
    }
    if (used != item.size()) throw InvalidInput("'" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

GroundSpec parse_ground(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InvalidInput("empty ground set");
  if (t.front() == '{' && t.find('"') != std::string::npos) return spec_from_json(parse_json(t, "ground spec"));
  return GroundSpec::from_list(parse_int_list(t));
}

Sequence parse_element(const std::string& text) {
  std::string t = trim(text);
  if (t.empty() || t.front() != '{') return Sequence::parse(t);
  json j = parse_json(t, "element");
  Ambient amb;
  if (j.contains("ambient")) {
    const auto& a = j["ambient"];
    if (a.is_string()) {
      if (a.get<std::string>() != "Z") throw InvalidInput("ambient must be \"Z\" or {\"mod\":n}");
    } else if (a.is_object() && a.contains("mod")) {
      amb = Ambient::cyclic(json_int(a["mod"], "mod"));
    } else {
      throw InvalidInput("ambient must be \"Z\" or {\"mod\":n}");
    }
  }
  if (!j.contains("terms") || !j["terms"].is_object()) throw InvalidInput("element JSON needs a 'terms' object");
  Sequence s(amb);
  for (auto& [key, value] : j["terms"].items()) {
    auto g = parse_int_list(key);
    if (g.size() != 1) throw InvalidInput("bad term key '" + key + "'");
    Count c = json_int(value, "term count");
    if (c < 1) throw InvalidInput("term counts must be positive");
    s.add(g.front(), c);
  }
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factorization invariants of monoids of zero-sum sequences over the integers", "zsm"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  Budget budget;
  bool as_csv = false, as_json = false;
  app.add_option("--budget-nodes,--budget", budget.max_nodes, "search node limit")->capture_default_str();
  app.add_option("--budget-results", budget.max_results, "stored result limit")->capture_default_str();
  auto* json_flag = app.add_flag("--json", as_json, "JSON report (default)");
  app.add_flag("--csv", as_csv, "flat CSV of the results")->excludes(json_flag);

  auto* atoms = app.add_subcommand("atoms", "atoms and Davenport constant of a finite ground set");
  atoms->add_option("--ground", o.ground)->required();

  auto* fact = app.add_subcommand("factorize", "factorizations and set of lengths");
  fact->add_option("--element", o.element)->required();
  fact->add_option("--ground", o.ground);
  fact->add_flag("--lengths-only", o.lengths_only);
  auto* kopt = fact->add_option("--k", o.k, "only factorizations of this length");

  auto* inv = app.add_subcommand("invariants", "catenary, monotone catenary, successive distance, tame degree");
  inv->add_option("--element", o.element)->required();
  inv->add_option("--ground", o.ground);
  inv->add_option("--which", o.which, "comma list of c, cmon, delta, tame:<atom>");

  auto* el = app.add_subcommand("elasticity", "exact elasticity of a ground spec");
  el->add_option("--spec", o.spec)->required();

  auto* rk = app.add_subcommand("rhok", "rho_k and lambda_k of a finite ground set");
  rk->add_option("--ground", o.ground)->required();
  rk->add_option("--k", o.k)->required();

  auto* tr = app.add_subcommand("transfer", "transfer homomorphism fidelity");
  tr->add_option("mode", o.mode)->required()->check(CLI::IsMember({"cyclic", "psi"}));
  tr->add_option("--element", o.element)->required();
  tr->add_option("--n", o.n);
  tr->add_option("--d", o.d);

  auto* sc = app.add_subcommand("structure-check", "residue condition for AAP sets of lengths");
  sc->add_option("--spec", o.spec)->required();

  auto* aa = app.add_subcommand("aamp", "recognize an almost arithmetical multiprogression");
  aa->add_option("--lengths", o.lengths)->required();
  aa->add_option("--deltas", o.deltas)->required();
  aa->add_option("--bound", o.bound);

  auto* fam = app.add_subcommand("family", "build and validate a counterexample family");
  fam->add_option("name", o.mode)->required();
  fam->add_option("--params", o.params);

  auto* ch = app.add_subcommand("chains", "chains through pair monoids");
  ch->add_option("mode", o.mode)
      ->required()
      ->check(CLI::IsMember({"upsilon", "to-upsilon", "equal-plus", "m2", "rel-davenport"}));
  ch->add_option("--element", o.element);
  ch->add_option("--ground", o.ground);
  ch->add_option("--negatives", o.negatives);
  ch->add_option("--start", o.start, "index of the starting factorization");
  ch->add_option("--target", o.target, "index of the target factorization");

  auto* wi = app.add_subcommand("witness", "growth witnesses");
  wi->add_option("kind", o.mode)->required()->check(CLI::IsMember({"tame-growth"}));
  wi->add_option("--spec", o.spec, "\"nonzero\" or {\"positive\":spec,\"negative_magnitudes\":spec}");
  wi->add_option("--n", o.n)->required();

  auto* ba = app.add_subcommand("batch", "run a manifest of jobs");
  ba->add_option("--manifest", o.manifest)->required();
  ba->add_flag("--concurrent", o.concurrent);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return invalid_input;
  }
  o.has_k = kopt->count() > 0;

  const std::string cmd = app.get_subcommands().front()->get_name();
  Report r;
  try {
    budget.validate();
    if (cmd == "batch") return run_batch(o, o.concurrent, out);
    if (cmd == "chains" && o.mode != "rel-davenport" && o.element.empty())
      throw InvalidInput("chains " + o.mode + " needs --element");
    if (cmd == "chains" && o.mode == "rel-davenport" && o.negatives.empty())
      throw InvalidInput("chains rel-davenport needs --negatives");
    if (cmd == "transfer" && o.mode == "cyclic" && o.n < 1) throw InvalidInput("transfer cyclic needs --n >= 1");
    if (cmd == "transfer" && o.mode == "psi" && o.d < 1) throw InvalidInput("transfer psi needs --d >= 1");
    dispatch(cmd, o, budget, r);
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    r.complete = false;
    r.results["error"] = e.what();
    r.labels["error"] = "lower bound";
    emit(finish(cmd, r, budget), as_csv, out);
    return budget_exhausted;
  } catch (const DataError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return internal_error;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return invalid_input;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return invalid_input;
  }
  emit(finish(cmd, r, budget), as_csv, out);
  return r.complete ? ok : budget_exhausted;
}

}  // namespace zsm::cli
