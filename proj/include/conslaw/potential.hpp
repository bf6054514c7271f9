#pragma once

#include <map>
#include <string>
#include <vector>

#include "conslaw/conservation.hpp"
#include "conslaw/model_file.hpp"

namespace conslaw {

struct PotentialLevel {
  std::string potential;      // "v" or "w"
  ConservedVector generator;  // defines potential_x = F, potential_t = -G
};

struct PotentialSystem {
  DifferentialSystem system;
  std::vector<PotentialLevel> levels;
};

// Next free potential (v, then w) with x-rule F and t-rule -G. A base law must
// have order <= 1; a law on top of v must not involve derivatives of u or v.
// Throws InvalidModel (order, no free potential) or IncompatibleSystem.
PotentialSystem build_potential_system(const ConservedVector& cv, const DifferentialSystem& sys);
PotentialSystem build_potential_system(const ConservedVector& cv, const PotentialSystem& ps);

struct CompatibilityReport {
  std::map<std::string, RationalFunction> residuals;  // per potential with both rules
  double seconds = 0;

  bool compatible() const;
};

CompatibilityReport verify_potential_system(const DifferentialSystem& sys);

// One verification run: a case id plus parameter values.
struct CaseRun {
  std::string id;
  std::map<std::string, Rational> parameters;

  std::string label() const;  // "3 [eps=-1]"
};

// The case corpus, keyed by id. Parent cases are resolved by id.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<ModelFile> files);  // throws InvalidModel on duplicate or dangling ids

  static const Registry& builtin();  // the corpus compiled into the library
  static Registry from_directory(const std::string& dir);

  const ModelFile* find(const std::string& id) const;
  std::vector<std::string> ids() const;
  const std::vector<ModelFile>& files() const { return files_; }
  void replace(ModelFile file);  // throws InvalidModel for unknown ids
  void insert(ModelFile file);   // adds, or replaces the case with the same id

  // Every id, with one run per admissible parameter combination.
  std::vector<CaseRun> runs(bool simple_only = false) const;
  std::vector<CaseRun> runs_of(const std::string& id) const;  // throws for "any" parameters

  // Throws InvalidModel for unknown ids and missing or invalid parameters.
  LoadedCase instantiate(const std::string& id, const std::map<std::string, Rational>& parameters = {},
                         int max_order = DifferentialSystem::default_max_order) const;

 private:
  std::vector<ModelFile> files_;
};

LoadedCase table1_case(const std::string& id, const std::map<std::string, Rational>& parameters = {});

struct CaseVerdict {
  CaseRun run;
  bool simple = true;
  RationalFunction residual;                          // conservation law, on shell
  std::map<std::string, RationalFunction> compatibility;
  std::vector<std::string> generator_mismatch;        // system rules that differ from (F, -G)
  std::vector<std::string> consequences;              // jets rewritten while verifying
  std::string error;                                  // load or reduction failure
  double seconds = 0;

  bool passed() const;
};

struct Table1Options {
  bool simple_only = false;
  unsigned jobs = 1;
  // Equations ("v_t") deleted from each double-numbered case after loading.
  std::vector<std::string> strip_parent_rules;
};

struct Table1Summary {
  std::vector<CaseVerdict> verdicts;
  double seconds = 0;

  std::size_t passed() const;
  bool all_passed() const { return passed() == verdicts.size(); }
};

CaseVerdict verify_case(const Registry& registry, const CaseRun& run, const Table1Options& options = {});
Table1Summary verify_table1_all(const Registry& registry = Registry::builtin(), const Table1Options& options = {});

}  // namespace conslaw
