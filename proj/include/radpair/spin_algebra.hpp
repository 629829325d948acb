#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace radpair {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Spin quantum number stored as 2I so half-integers stay exact.
class SpinQuantumNumber {
 public:
  static constexpr int kMaxTwiceSpin = 3;

  constexpr SpinQuantumNumber() = default;
  // Throws ValidationError unless 1 <= twice_spin <= kMaxTwiceSpin.
  explicit SpinQuantumNumber(int twice_spin);

  // Accepts "1/2", "1", "3/2", also "0.5" and "1.5".
  static SpinQuantumNumber parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr int multiplicity() const { return twice_ + 1; }
  // I(I+1)
  constexpr double casimir() const { return value() * (value() + 1.0); }
  std::string to_string() const;

  friend constexpr auto operator<=>(SpinQuantumNumber, SpinQuantumNumber) = default;

 private:
  int twice_ = 1;
};

inline constexpr SpinQuantumNumber kSpinHalf{};

struct OperatorTriple {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
};

// Basis order m = I, I-1, ..., -I.
OperatorTriple spin_operators(SpinQuantumNumber spin);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// 1 ⊗ ... ⊗ op ⊗ ... ⊗ 1 with op at `site`.
ComplexMatrix embed_site_operator(const ComplexMatrix& op, std::size_t site,
                                  std::span<const int> site_dims);

// Reorders the tensor factors of `op`. Site j of the result is site order[j] of
// the input.
ComplexMatrix permute_sites(const ComplexMatrix& op, std::span<const int> site_dims,
                            std::span<const std::size_t> order);

// max|A − A†| / max|A| (0 for the zero matrix).
double hermiticity_error(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double rel_tol);

}  // namespace radpair
