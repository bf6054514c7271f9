#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/conservation.hpp"

namespace conslaw {

// Flat "[section]" / key = "value" text. Values are double-quoted strings or
// bare scalars; '#' starts a comment outside quotes. Order is preserved.
struct IniDocument {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
    const std::string* find(const std::string& key) const;
  };
  std::vector<Section> sections;

  static IniDocument parse(const std::string& text, const std::string& source = "<input>");
  std::string emit() const;
  const Section* find(const std::string& name) const;
  Section& section(const std::string& name);  // created when missing
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> args;
  std::vector<std::string> relations;
};

// Concrete replacements for arbitrary parts of a model, for numeric work.
struct ModelInstance {
  std::string name;
  std::vector<std::pair<std::string, std::string>> bindings;  // d, k, Dint, Kint
};

// One model file: model, declarations, conserved vector and potential system.
struct ModelFile {
  std::string id;
  std::string parent;
  std::string title;
  std::string source;
  std::vector<FunctionDecl> functions;
  std::vector<std::pair<std::string, std::vector<Rational>>> parameters;  // allowed values; empty = any
  std::string d = "arbitrary";
  std::string k = "arbitrary";
  std::optional<std::string> dint;
  std::optional<std::string> kint;
  std::optional<std::string> F;
  std::optional<std::string> G;
  std::string variables;  // comma separated; empty = inferred
  std::string level = "base";
  std::vector<std::pair<std::string, std::string>> system;   // "v_x" -> rhs
  std::vector<std::pair<std::string, std::string>> numeric;  // function -> instance
  std::vector<ModelInstance> instances;

  bool simple() const { return parent.empty(); }

  // Throws ParseError (syntax) or InvalidModel (unknown sections/keys).
  static ModelFile parse(const std::string& text, const std::string& source = "<input>");
  static ModelFile read(const std::string& path);
  std::string emit() const;
};

// A model file turned into engine objects.
struct LoadedCase {
  ModelFile file;
  SymbolTable symbols;
  std::map<std::string, Rational> parameters;
  PDEModel model;
  DifferentialSystem system;
  std::optional<ConservedVector> law;
  std::vector<std::string> reinstated;  // equations taken over from the parent case

  RelationSet relations() const { return system.relations(); }
  Expr parse(const std::string& text) const;
  RationalFunction parse_canonical(const std::string& text) const;
};

struct LoadOptions {
  std::map<std::string, Rational> parameters;
  bool require_parameters = false;  // every declared parameter needs a value
  const ModelFile* parent = nullptr;
  int max_order = DifferentialSystem::default_max_order;
};

// Throws ParseError, InvalidModel, InvalidRelation.
LoadedCase load_case(const ModelFile& file, const LoadOptions& options = {});

std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace conslaw
