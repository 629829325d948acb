#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace radpair {

// Bad user input: spin values, rates, grids, dimension caps.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
  explicit ValidationError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Eigensolver failure, undefined ratios, exhausted quadrature budgets.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace radpair
