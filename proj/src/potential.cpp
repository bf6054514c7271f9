#include "conslaw/potential.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <set>
#include <thread>

#include "conslaw/errors.hpp"

namespace conslaw {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& embedded_cases();
}

namespace {

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool derivative_free(const ConservedVector& cv) {
  for (const auto* part : {&cv.F, &cv.G})
    for (const auto& v : part->all_indeterminates())
      if (v.is(IndeterminateKind::jet) && v.order() > 0) return false;
  return true;
}

}  // namespace

PotentialSystem build_potential_system(const ConservedVector& cv, const DifferentialSystem& sys) {
  return build_potential_system(cv, PotentialSystem{sys, {}});
}

PotentialSystem build_potential_system(const ConservedVector& cv, const PotentialSystem& ps) {
  const DifferentialSystem& sys = ps.system;
  bool has_v = sys.equation("v", 'x') || sys.equation("v", 't');
  bool has_w = sys.equation("w", 'x') || sys.equation("w", 't');
  if (has_w) throw InvalidModel("the system already defines both potentials v and w");
  std::string name = has_v ? "w" : "v";
  if (!has_v && order_of(cv) > 1)
    throw InvalidModel("a base conservation law of order " + std::to_string(order_of(cv)) +
                       " cannot define a first-order potential system");
  if (has_v && !derivative_free(cv))
    throw InvalidModel("a second-level law must not involve derivatives of u or v");
  for (const auto* part : {&cv.F, &cv.G})
    for (const auto& v : part->all_indeterminates())
      if (v.is(IndeterminateKind::jet) && v.name() == name)
        throw InvalidModel("the law already mentions the potential " + name + " it would define");

  PotentialSystem out = ps;
  out.system.add_equation({name, 'x', cv.F});
  out.system.add_equation({name, 't', -cv.G});
  for (const auto& [p, r] : out.system.compatibility_residuals())
    if (!r.is_zero()) throw IncompatibleSystem("cross derivatives of " + p + " disagree on shell: " + r.str());
  out.levels.push_back({name, cv});
  return out;
}

bool CompatibilityReport::compatible() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const auto& e) { return e.second.is_zero(); });
}

CompatibilityReport verify_potential_system(const DifferentialSystem& sys) {
  auto start = std::chrono::steady_clock::now();
  CompatibilityReport report;
  report.residuals = sys.compatibility_residuals();
  report.seconds = since(start);
  return report;
}

std::string CaseRun::label() const {
  if (parameters.empty()) return id;
  std::string out = id + " [";
  bool first = true;
  for (const auto& [name, value] : parameters) {
    out += (first ? "" : ", ") + name + "=" + value.get_str();
    first = false;
  }
  return out + "]";
}

Registry::Registry(std::vector<ModelFile> files) : files_(std::move(files)) {
  std::set<std::string> seen;
  for (const auto& f : files_) {
    if (f.id.empty()) throw InvalidModel(f.source + ": missing [case] id");
    if (!seen.insert(f.id).second) throw InvalidModel("duplicate case id " + f.id);
  }
  for (const auto& f : files_)
    if (!f.parent.empty() && !seen.count(f.parent))
      throw InvalidModel("case " + f.id + " names unknown parent " + f.parent);
}

const Registry& Registry::builtin() {
  static const Registry registry = [] {
    std::vector<ModelFile> files;
    for (const auto& [name, text] : detail::embedded_cases()) files.push_back(ModelFile::parse(text, name));
    return Registry(std::move(files));
  }();
  return registry;
}

Registry Registry::from_directory(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".toml") paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<ModelFile> files;
  for (const auto& p : paths) files.push_back(ModelFile::read(p));
  return Registry(std::move(files));
}

const ModelFile* Registry::find(const std::string& id) const {
  for (const auto& f : files_)
    if (f.id == id) return &f;
  return nullptr;
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  for (const auto& f : files_) out.push_back(f.id);
  return out;
}

void Registry::replace(ModelFile file) {
  for (auto& f : files_)
    if (f.id == file.id) {
      f = std::move(file);
      return;
    }
  throw InvalidModel("unknown case " + file.id);
}

void Registry::insert(ModelFile file) {
  if (find(file.id)) return replace(std::move(file));
  if (file.id.empty()) throw InvalidModel(file.source + ": missing [case] id");
  if (!file.parent.empty() && !find(file.parent))
    throw InvalidModel("case " + file.id + " names unknown parent " + file.parent);
  files_.push_back(std::move(file));
}

std::vector<CaseRun> Registry::runs_of(const std::string& id) const {
  const ModelFile* f = find(id);
  if (!f) throw InvalidModel("unknown case id '" + id + "'");
  std::vector<std::map<std::string, Rational>> combos{{}};
  for (const auto& [name, values] : f->parameters) {
    if (values.empty()) throw InvalidModel("case " + f->id + ": parameter " + name + " has no listed values");
    std::vector<std::map<std::string, Rational>> next;
    for (const auto& c : combos)
      for (const auto& v : values) {
        auto m = c;
        m[name] = v;
        next.push_back(std::move(m));
      }
    combos = std::move(next);
  }
  std::vector<CaseRun> out;
  for (auto& c : combos) out.push_back({f->id, std::move(c)});
  return out;
}

std::vector<CaseRun> Registry::runs(bool simple_only) const {
  std::vector<CaseRun> out;
  for (const auto& f : files_) {
    if (simple_only && !f.simple()) continue;
    for (auto& r : runs_of(f.id)) out.push_back(std::move(r));
  }
  return out;
}

LoadedCase Registry::instantiate(const std::string& id, const std::map<std::string, Rational>& parameters,
                                 int max_order) const {
  const ModelFile* f = find(id);
  if (!f) throw InvalidModel("unknown case id '" + id + "'");
  LoadOptions options;
  options.parameters = parameters;
  options.require_parameters = true;
  options.max_order = max_order;
  if (!f->parent.empty()) options.parent = find(f->parent);
  return load_case(*f, options);
}

LoadedCase table1_case(const std::string& id, const std::map<std::string, Rational>& parameters) {
  return Registry::builtin().instantiate(id, parameters);
}

bool CaseVerdict::passed() const {
  if (!error.empty() || !residual.is_zero() || !generator_mismatch.empty()) return false;
  return std::all_of(compatibility.begin(), compatibility.end(), [](const auto& e) { return e.second.is_zero(); });
}

CaseVerdict verify_case(const Registry& registry, const CaseRun& run, const Table1Options& options) {
  auto start = std::chrono::steady_clock::now();
  CaseVerdict verdict;
  verdict.run = run;
  try {
    const ModelFile* f = registry.find(run.id);
    if (!f) throw InvalidModel("unknown case id '" + run.id + "'");
    verdict.simple = f->simple();
    LoadedCase lc = registry.instantiate(run.id, run.parameters);
    if (!lc.law) throw InvalidModel("case " + run.id + " has no [conserved] section");
    if (!verdict.simple)
      for (const auto& rule : options.strip_parent_rules)
        if (rule.size() == 3 && rule[1] == '_') lc.system.remove_equation(rule.substr(0, 1), rule[2]);

    std::string p = lc.law->level == Level::base ? "v" : "w";
    RelationSet rels = lc.system.relations();
    if (const auto* ex = lc.system.equation(p, 'x'); ex && !rels.reduce(ex->rhs - lc.law->F).is_zero())
      verdict.generator_mismatch.push_back(p + "_x");
    if (const auto* et = lc.system.equation(p, 't'); et && !rels.reduce(et->rhs + lc.law->G).is_zero())
      verdict.generator_mismatch.push_back(p + "_t");

    VerificationReport report = verify_conservation_law(*lc.law, lc.system);
    verdict.residual = report.residual;
    for (const auto& v : report.consequences) verdict.consequences.push_back(v.str());
    verdict.compatibility = verify_potential_system(lc.system).residuals;
  } catch (const std::exception& e) {
    verdict.error = e.what();
  }
  verdict.seconds = since(start);
  return verdict;
}

std::size_t Table1Summary::passed() const {
  return std::count_if(verdicts.begin(), verdicts.end(), [](const CaseVerdict& v) { return v.passed(); });
}

Table1Summary verify_table1_all(const Registry& registry, const Table1Options& options) {
  auto start = std::chrono::steady_clock::now();
  std::vector<CaseRun> runs = registry.runs(options.simple_only);
  Table1Summary summary;
  summary.verdicts.resize(runs.size());
  unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(runs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < runs.size();) summary.verdicts[i] = verify_case(registry, runs[i], options);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  summary.seconds = since(start);
  return summary;
}

}  // namespace conslaw
