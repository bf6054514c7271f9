#include "conslaw/indeterminate.hpp"

#include <cstdio>
#include <stdexcept>

#include "conslaw/errors.hpp"
#include "conslaw/rational_function.hpp"

namespace conslaw {

struct Indeterminate::Data {
  IndeterminateKind kind;
  std::string name;
  std::vector<std::string> args;
  std::vector<int> index;
  std::shared_ptr<const RationalFunction> argument;
  std::string key;
  std::string printable;
};

namespace {

std::string pad2(int n) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d", n);
  return buf;
}

std::string derivative_suffix(const std::vector<std::string>& letters, const std::vector<int>& index) {
  std::string s;
  for (std::size_t i = 0; i < index.size(); ++i)
    for (int j = 0; j < index[i]; ++j) s += letters[i];
  return s;
}

const std::vector<std::string>& jet_letters() {
  static const std::vector<std::string> letters{"t", "x"};
  return letters;
}

}  // namespace

bool is_dependent_name(const std::string& name) { return name == "u" || name == "v" || name == "w"; }

Indeterminate Indeterminate::independent(const std::string& name) {
  if (name != "t" && name != "x") throw Error("independent variable must be t or x, got " + name);
  auto d = std::make_shared<Data>();
  d->kind = IndeterminateKind::independent;
  d->name = name;
  d->key = "0" + name;
  d->printable = name;
  return Indeterminate(std::move(d));
}

Indeterminate Indeterminate::jet(const std::string& dependent, int t_order, int x_order) {
  if (!is_dependent_name(dependent)) throw Error("unknown dependent variable " + dependent);
  if (t_order < 0 || x_order < 0) throw Error("negative derivative order");
  auto d = std::make_shared<Data>();
  d->kind = IndeterminateKind::jet;
  d->name = dependent;
  d->index = {t_order, x_order};
  d->key = "1" + dependent + pad2(t_order + x_order) + pad2(t_order);
  std::string suffix = derivative_suffix(jet_letters(), d->index);
  d->printable = suffix.empty() ? dependent : dependent + "_" + suffix;
  return Indeterminate(std::move(d));
}

Indeterminate Indeterminate::function(const std::string& name, std::vector<std::string> args,
                                      std::vector<int> index) {
  if (index.empty()) index.assign(args.size(), 0);
  if (index.size() != args.size()) throw Error("derivative index does not match arguments of " + name);
  auto d = std::make_shared<Data>();
  d->kind = IndeterminateKind::function;
  d->name = name;
  int total = 0;
  for (int i : index) {
    if (i < 0) throw Error("negative derivative order");
    total += i;
  }
  d->key = "2" + name + ";" + pad2(total);
  for (int i : index) d->key += pad2(i);
  std::string suffix = derivative_suffix(args, index);
  d->printable = suffix.empty() ? name : name + "_" + suffix;
  d->args = std::move(args);
  d->index = std::move(index);
  return Indeterminate(std::move(d));
}

Indeterminate Indeterminate::antiderivative(const std::string& name) {
  if (name != "Dint" && name != "Kint") throw Error("antiderivative must be Dint or Kint, got " + name);
  auto d = std::make_shared<Data>();
  d->kind = IndeterminateKind::antiderivative;
  d->name = name;
  d->key = "3" + name;
  d->printable = name;
  return Indeterminate(std::move(d));
}

Indeterminate Indeterminate::parameter(const std::string& name) {
  auto d = std::make_shared<Data>();
  d->kind = IndeterminateKind::parameter;
  d->name = name;
  d->key = "4" + name;
  d->printable = name;
  return Indeterminate(std::move(d));
}

Indeterminate Indeterminate::exponential(const RationalFunction& argument) {
  auto d = std::make_shared<Data>();
  d->kind = IndeterminateKind::exponential;
  d->name = "exp";
  d->argument = std::make_shared<const RationalFunction>(argument);
  d->printable = "exp(" + argument.str() + ")";
  d->key = "5" + d->printable;
  return Indeterminate(std::move(d));
}

IndeterminateKind Indeterminate::kind() const { return data_->kind; }
const std::string& Indeterminate::name() const { return data_->name; }
const std::vector<std::string>& Indeterminate::args() const { return data_->args; }
const std::vector<int>& Indeterminate::index() const { return data_->index; }
const std::string& Indeterminate::key() const { return data_->key; }
const std::string& Indeterminate::str() const { return data_->printable; }

int Indeterminate::t_order() const { return kind() == IndeterminateKind::jet ? data_->index[0] : 0; }
int Indeterminate::x_order() const { return kind() == IndeterminateKind::jet ? data_->index[1] : 0; }

int Indeterminate::order() const {
  int total = 0;
  for (int i : data_->index) total += i;
  return total;
}

const RationalFunction& Indeterminate::argument() const {
  if (!data_->argument) throw Error(str() + " is not an exponential");
  return *data_->argument;
}

Indeterminate Indeterminate::with_index(std::vector<int> index) const {
  switch (kind()) {
    case IndeterminateKind::jet:
      return jet(name(), index.at(0), index.at(1));
    case IndeterminateKind::function:
      return function(name(), args(), std::move(index));
    default:
      throw Error(str() + " carries no derivative index");
  }
}

Indeterminate argument_variable(const std::string& name) {
  if (name == "t" || name == "x") return Indeterminate::independent(name);
  if (is_dependent_name(name)) return Indeterminate::jet(name, 0, 0);
  throw Error("'" + name + "' cannot be a formal argument (expected t, x, u, v or w)");
}

}  // namespace conslaw
