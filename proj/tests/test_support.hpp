#pragma once

#include <random>
#include <string>
#include <vector>

#include "conslaw/rational_function.hpp"
#include "conslaw/symbols.hpp"

namespace test_support {

// Random rational functions over jets, declared functions, antiderivatives
// and exponentials; small integer coefficients, nonzero denominators.
class RandomExpressions {
 public:
  RandomExpressions(const conslaw::SymbolTable& symbols, unsigned seed) : rng_(seed) {
    using conslaw::Indeterminate;
    atoms_ = {Indeterminate::independent("t"), Indeterminate::independent("x"), Indeterminate::jet("u", 0, 0),
              Indeterminate::jet("u", 0, 1), Indeterminate::jet("u", 0, 2), Indeterminate::jet("u", 1, 0),
              Indeterminate::antiderivative("Dint")};
    for (const auto& f : symbols.functions()) atoms_.push_back(Indeterminate::function(f.name, f.args, {}));
  }

  RandomExpressions(std::vector<conslaw::Indeterminate> atoms, unsigned seed) : rng_(seed), atoms_(std::move(atoms)) {}

  conslaw::RationalFunction polynomial(int terms) {
    using conslaw::RationalFunction;
    RationalFunction p;
    std::uniform_int_distribution<int> coeff(-3, 3), pick(0, static_cast<int>(atoms_.size()) - 1), deg(0, 2);
    for (int i = 0; i < terms; ++i) {
      RationalFunction m(coeff(rng_));
      int factors = deg(rng_);
      for (int j = 0; j < factors; ++j) m *= RationalFunction(atoms_[pick(rng_)]);
      p += m;
    }
    return p;
  }

  conslaw::RationalFunction next() {
    using conslaw::RationalFunction;
    std::uniform_int_distribution<int> shape(0, 5);
    RationalFunction num = polynomial(3);
    switch (shape(rng_)) {
      case 0:
        return num;
      case 1:
        return num * conslaw::exponential(polynomial(1) + RationalFunction(1));
      default: {
        RationalFunction den;
        do den = polynomial(2) + RationalFunction(2); while (den.is_zero());
        return num / den;
      }
    }
  }

 private:
  std::mt19937 rng_;
  std::vector<conslaw::Indeterminate> atoms_;
};

}  // namespace test_support
