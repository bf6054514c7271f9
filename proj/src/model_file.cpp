#include "conslaw/model_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "conslaw/errors.hpp"
#include "conslaw/parse.hpp"

namespace conslaw {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

const std::string* IniDocument::Section::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

const IniDocument::Section* IniDocument::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

IniDocument::Section& IniDocument::section(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back({name, {}});
  return sections.back();
}

IniDocument IniDocument::parse(const std::string& text, const std::string& source) {
  IniDocument doc;
  std::size_t offset = 0;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  auto fail = [&](const std::string& what, std::size_t col) -> void {
    throw ParseError(source + ":" + std::to_string(line_no) + ": " + what, offset + col);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    skip();
    if (i == line.size() || line[i] == '#') {
      offset += line.size() + 1;
      continue;
    }
    if (line[i] == '[') {
      std::size_t close = line.find(']', i);
      if (close == std::string::npos) fail("unterminated section header", i);
      std::string name = trim(line.substr(i + 1, close - i - 1));
      if (!valid_key(name)) fail("invalid section name '" + name + "'", i);
      std::string rest = trim(line.substr(close + 1));
      if (!rest.empty() && rest[0] != '#') fail("text after section header", close + 1);
      if (doc.find(name)) fail("duplicate section [" + name + "]", i);
      doc.sections.push_back({name, {}});
    } else {
      std::size_t eq = line.find('=', i);
      if (eq == std::string::npos) fail("expected key = value", i);
      std::string key = trim(line.substr(i, eq - i));
      if (!valid_key(key)) fail("invalid key '" + key + "'", i);
      if (doc.sections.empty()) fail("key '" + key + "' outside a section", i);
      i = eq + 1;
      skip();
      std::string value;
      if (i < line.size() && line[i] == '"') {
        ++i;
        bool closed = false;
        for (; i < line.size(); ++i) {
          if (line[i] == '\\' && i + 1 < line.size()) {
            value += line[++i];
          } else if (line[i] == '"') {
            closed = true;
            ++i;
            break;
          } else {
            value += line[i];
          }
        }
        if (!closed) fail("unterminated string", i);
        skip();
        if (i < line.size() && line[i] != '#') fail("text after value", i);
      } else {
        std::size_t hash = line.find('#', i);
        value = trim(line.substr(i, hash == std::string::npos ? std::string::npos : hash - i));
        if (value.empty()) fail("missing value for '" + key + "'", i);
      }
      auto& sec = doc.sections.back();
      if (sec.find(key)) fail("duplicate key '" + key + "'", 0);
      sec.entries.emplace_back(key, value);
    }
    offset += line.size() + 1;
  }
  return doc;
}

std::string IniDocument::emit() const {
  std::string out;
  for (const auto& s : sections) {
    if (!out.empty()) out += "\n";
    out += "[" + s.name + "]\n";
    for (const auto& [k, v] : s.entries) out += k + " = " + quote(v) + "\n";
  }
  return out;
}

namespace {

void require_keys(const IniDocument::Section& s, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : s.entries) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; });
    if (!ok) throw InvalidModel("unknown key '" + k + "' in [" + s.name + "]");
  }
}

FunctionDecl parse_function_decl(const std::string& name, const std::string& value) {
  FunctionDecl f;
  f.name = name;
  std::string v = trim(value);
  if (v.empty() || v[0] != '(') throw InvalidModel("function " + name + ": expected \"(args) : relations\"");
  std::size_t close = v.find(')');
  if (close == std::string::npos) throw InvalidModel("function " + name + ": unterminated argument list");
  for (const auto& a : split_list(v.substr(1, close - 1)))
    if (!a.empty()) f.args.push_back(a);
  std::string rest = trim(v.substr(close + 1));
  if (!rest.empty()) {
    if (rest[0] != ':') throw InvalidModel("function " + name + ": expected ':' before relations");
    for (const auto& r : split_list(rest.substr(1), ';'))
      if (!r.empty()) f.relations.push_back(r);
  }
  return f;
}

std::string format_function_decl(const FunctionDecl& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? "," : "") + f.args[i];
  s += ")";
  for (std::size_t i = 0; i < f.relations.size(); ++i) s += (i ? "; " : " : ") + f.relations[i];
  return s;
}

std::pair<std::string, char> equation_lhs(const std::string& key) {
  if (key.size() != 3 || key[1] != '_' || (key[0] != 'v' && key[0] != 'w') || (key[2] != 'x' && key[2] != 't'))
    throw InvalidModel("system keys are v_x, v_t, w_x, w_t; got '" + key + "'");
  return {std::string(1, key[0]), key[2]};
}

}  // namespace

ModelFile ModelFile::parse(const std::string& text, const std::string& source) {
  IniDocument doc = IniDocument::parse(text, source);
  ModelFile f;
  f.source = source;
  for (const auto& s : doc.sections) {
    if (s.name == "case") {
      require_keys(s, {"id", "parent", "title"});
      if (auto v = s.find("id")) f.id = *v;
      if (auto v = s.find("parent")) f.parent = *v;
      if (auto v = s.find("title")) f.title = *v;
    } else if (s.name == "params") {
      for (const auto& [k, v] : s.entries) {
        std::vector<Rational> values;
        if (trim(v) != "any")
          for (const auto& item : split_list(v)) {
            try {
              values.push_back(parse_rational(item));
            } catch (const std::exception&) {
              throw InvalidModel("parameter " + k + ": '" + item + "' is not a rational number");
            }
          }
        f.parameters.emplace_back(k, values);
      }
    } else if (s.name == "functions") {
      for (const auto& [k, v] : s.entries) f.functions.push_back(parse_function_decl(k, v));
    } else if (s.name == "model") {
      require_keys(s, {"d", "k", "Dint", "Kint"});
      if (auto v = s.find("d")) f.d = *v;
      if (auto v = s.find("k")) f.k = *v;
      if (auto v = s.find("Dint")) f.dint = *v;
      if (auto v = s.find("Kint")) f.kint = *v;
    } else if (s.name == "conserved") {
      require_keys(s, {"F", "G", "vars", "level"});
      if (auto v = s.find("F")) f.F = *v;
      if (auto v = s.find("G")) f.G = *v;
      if (auto v = s.find("vars")) f.variables = *v;
      if (auto v = s.find("level")) f.level = *v;
      if (f.F.has_value() != f.G.has_value()) throw InvalidModel("[conserved] needs both F and G");
      level_from_string(f.level);
    } else if (s.name == "system") {
      for (const auto& [k, v] : s.entries) {
        equation_lhs(k);
        f.system.emplace_back(k, v);
      }
    } else if (s.name == "numeric") {
      f.numeric = s.entries;
    } else if (s.name == "instances") {
      for (const auto& [k, v] : s.entries) {
        ModelInstance inst{k, {}};
        for (const auto& item : split_list(v, ';')) {
          if (item.empty()) continue;
          auto eq = item.find('=');
          if (eq == std::string::npos) throw InvalidModel("instance " + k + ": expected name = expression");
          std::string name = trim(item.substr(0, eq));
          if (name != "d" && name != "k" && name != "Dint" && name != "Kint")
            throw InvalidModel("instance " + k + " binds '" + name + "'; only d, k, Dint, Kint can be bound");
          inst.bindings.emplace_back(name, trim(item.substr(eq + 1)));
        }
        f.instances.push_back(std::move(inst));
      }
    } else {
      throw InvalidModel("unknown section [" + s.name + "] in " + source);
    }
  }
  return f;
}

ModelFile ModelFile::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModel("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::string ModelFile::emit() const {
  IniDocument doc;
  if (!id.empty() || !parent.empty() || !title.empty()) {
    auto& s = doc.section("case");
    if (!id.empty()) s.entries.emplace_back("id", id);
    if (!parent.empty()) s.entries.emplace_back("parent", parent);
    if (!title.empty()) s.entries.emplace_back("title", title);
  }
  if (!parameters.empty()) {
    auto& s = doc.section("params");
    for (const auto& [name, values] : parameters) {
      std::string v;
      for (const auto& q : values) v += (v.empty() ? "" : ", ") + q.get_str();
      s.entries.emplace_back(name, v.empty() ? "any" : v);
    }
  }
  if (!functions.empty()) {
    auto& s = doc.section("functions");
    for (const auto& f : functions) s.entries.emplace_back(f.name, format_function_decl(f));
  }
  auto& m = doc.section("model");
  m.entries.emplace_back("d", d);
  m.entries.emplace_back("k", k);
  if (dint) m.entries.emplace_back("Dint", *dint);
  if (kint) m.entries.emplace_back("Kint", *kint);
  if (F) {
    auto& s = doc.section("conserved");
    s.entries.emplace_back("F", *F);
    s.entries.emplace_back("G", *G);
    if (!variables.empty()) s.entries.emplace_back("vars", variables);
    s.entries.emplace_back("level", level);
  }
  if (!system.empty()) doc.section("system").entries = system;
  if (!numeric.empty()) doc.section("numeric").entries = numeric;
  if (!instances.empty()) {
    auto& s = doc.section("instances");
    for (const auto& inst : instances) {
      std::string v;
      for (const auto& [name, body] : inst.bindings) v += (v.empty() ? "" : "; ") + name + " = " + body;
      s.entries.emplace_back(inst.name, v);
    }
  }
  return doc.emit();
}

Expr LoadedCase::parse(const std::string& text) const { return conslaw::parse(text, symbols); }

RationalFunction LoadedCase::parse_canonical(const std::string& text) const { return parse(text).canonical(); }

namespace {

RationalFunction model_part(const std::string& text, const char* symbol, const SymbolTable& symbols,
                            const std::string& what) {
  if (trim(text) == "arbitrary") return conslaw::parse(symbol, symbols).canonical();
  try {
    return conslaw::parse(text, symbols).canonical();
  } catch (const ParseError& e) {
    throw InvalidModel(what + ": " + e.what());
  }
}

}  // namespace

LoadedCase load_case(const ModelFile& file, const LoadOptions& options) {
  SymbolTable symbols;
  std::vector<std::pair<std::string, std::vector<Rational>>> params = file.parameters;
  std::vector<FunctionDecl> functions = file.functions;
  if (options.parent) {
    for (const auto& p : options.parent->parameters)
      if (std::none_of(params.begin(), params.end(), [&](const auto& q) { return q.first == p.first; }))
        params.push_back(p);
    for (const auto& f : options.parent->functions)
      if (std::none_of(functions.begin(), functions.end(), [&](const auto& g) { return g.name == f.name; }))
        functions.push_back(f);
  }
  for (const auto& [name, values] : params) symbols.declare_parameter(name);
  for (const auto& f : functions) symbols.declare_function(f.name, f.args, f.relations);

  std::map<std::string, Rational> values;
  for (const auto& [name, value] : options.parameters) {
    auto it = std::find_if(params.begin(), params.end(), [&](const auto& p) { return p.first == name; });
    if (it == params.end()) throw InvalidModel("case " + file.id + " has no parameter " + name);
    if (!it->second.empty() && std::find(it->second.begin(), it->second.end(), value) == it->second.end())
      throw InvalidModel("parameter " + name + " = " + value.get_str() + " is not an allowed value for case " +
                         file.id);
    values[name] = value;
  }
  if (options.require_parameters)
    for (const auto& [name, allowed] : params)
      if (!values.count(name)) throw InvalidModel("case " + file.id + " needs a value for parameter " + name);

  std::optional<RationalFunction> dint, kint;
  if (file.dint) dint = model_part(*file.dint, "Dint", symbols, "Dint");
  if (file.kint) kint = model_part(*file.kint, "Kint", symbols, "Kint");
  PDEModel model(model_part(file.d, "d", symbols, "d"), model_part(file.k, "k", symbols, "k"), dint, kint);

  LoadedCase lc{file, symbols, values, model, DifferentialSystem(model, symbols, values, options.max_order), {}, {}};

  std::set<std::string> defined;
  for (const auto& [key, rhs] : file.system) defined.insert(key);
  std::vector<std::pair<std::string, std::string>> equations;
  if (options.parent)
    for (const auto& [key, rhs] : options.parent->system)
      if (!defined.count(key)) {
        equations.emplace_back(key, rhs);
        lc.reinstated.push_back(key + " = " + rhs);
      }
  equations.insert(equations.end(), file.system.begin(), file.system.end());
  for (const auto& [key, rhs] : equations) {
    auto [p, wrt] = equation_lhs(key);
    RationalFunction r;
    try {
      r = conslaw::parse(rhs, symbols).canonical();
    } catch (const ParseError& e) {
      throw InvalidModel(key + ": " + e.what());
    }
    lc.system.add_equation({p, wrt, r});
  }

  if (file.F) {
    ConservedVector cv;
    cv.F = conslaw::parse(*file.F, symbols).canonical();
    cv.G = conslaw::parse(*file.G, symbols).canonical();
    cv.level = level_from_string(file.level);
    for (const auto& name : split_list(file.variables)) {
      if (name.empty()) continue;
      Expr e = conslaw::parse(name, symbols);
      if (e.kind() != Expr::Kind::symbol ||
          !(e.symbol().is(IndeterminateKind::jet) || e.symbol().is(IndeterminateKind::independent)))
        throw InvalidModel("declared variable '" + name + "' is not a jet variable");
      cv.variables.push_back(e.symbol());
    }
    cv.check_variables();
    lc.law = cv;
  }
  return lc;
}

}  // namespace conslaw
