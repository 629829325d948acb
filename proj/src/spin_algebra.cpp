#include "radpair/spin_algebra.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <numeric>

#include "radpair/errors.hpp"

namespace radpair {

SpinQuantumNumber::SpinQuantumNumber(int twice_spin) : twice_(twice_spin) {
  if (twice_spin < 1) throw ValidationError("spin must be ≥ 1/2");
  if (twice_spin > kMaxTwiceSpin) throw ValidationError("spin must be ≤ 3/2");
}

SpinQuantumNumber SpinQuantumNumber::parse(std::string_view text) {
  auto bad = [&] { return ValidationError("cannot parse spin '" + std::string(text) + "'"); };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    int num = 0;
    const auto lhs = text.substr(0, slash);
    const auto rhs = text.substr(slash + 1);
    if (rhs != "2") throw bad();
    if (std::from_chars(lhs.data(), lhs.data() + lhs.size(), num).ptr != lhs.data() + lhs.size())
      throw bad();
    if (num % 2 == 0) throw bad();
    return SpinQuantumNumber(num);
  }
  double value = 0.0;
  if (std::from_chars(text.data(), text.data() + text.size(), value).ptr != text.data() + text.size())
    throw bad();
  const double twice = 2.0 * value;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw bad();
  return SpinQuantumNumber(static_cast<int>(std::lround(twice)));
}

std::string SpinQuantumNumber::to_string() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

OperatorTriple spin_operators(SpinQuantumNumber spin) {
  const int dim = spin.multiplicity();
  const double s = spin.value();
  ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix sz = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = s - i;
    sz(i, i) = m;
    // S+ |m⟩ = sqrt(s(s+1) − m(m+1)) |m+1⟩; |m+1⟩ sits at row i-1.
    if (i > 0) raise(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  OperatorTriple ops;
  ops.x = 0.5 * (raise + lower);
  ops.y = Complex(0.0, -0.5) * (raise - lower);
  ops.z = std::move(sz);
  return ops;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix embed_site_operator(const ComplexMatrix& op, std::size_t site,
                                  std::span<const int> site_dims) {
  if (site >= site_dims.size()) throw ValidationError("site index out of range");
  if (op.rows() != op.cols() || op.rows() != site_dims[site])
    throw ValidationError("operator dimension does not match site " + std::to_string(site));
  // Identity blocks on either side keep this O(dim²) instead of repeated krons.
  Eigen::Index left = 1;
  Eigen::Index right = 1;
  for (std::size_t i = 0; i < site; ++i) left *= site_dims[i];
  for (std::size_t i = site + 1; i < site_dims.size(); ++i) right *= site_dims[i];
  const Eigen::Index d = op.rows();
  const Eigen::Index n = left * d * right;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        const Complex v = op(i, j);
        if (v == Complex(0.0, 0.0)) continue;
        const Eigen::Index row = (l * d + i) * right;
        const Eigen::Index col = (l * d + j) * right;
        for (Eigen::Index r = 0; r < right; ++r) out(row + r, col + r) = v;
      }
  return out;
}

ComplexMatrix permute_sites(const ComplexMatrix& op, std::span<const int> site_dims,
                            std::span<const std::size_t> order) {
  const std::size_t n_sites = site_dims.size();
  if (order.size() != n_sites) throw ValidationError("permutation length mismatch");
  std::vector<bool> seen(n_sites, false);
  for (std::size_t s : order) {
    if (s >= n_sites || seen[s]) throw ValidationError("order is not a permutation");
    seen[s] = true;
  }
  const Eigen::Index total =
      std::accumulate(site_dims.begin(), site_dims.end(), Eigen::Index{1}, std::multiplies<>());
  if (op.rows() != total || op.cols() != total)
    throw ValidationError("operator dimension does not match site dims");

  std::vector<int> new_dims(n_sites);
  for (std::size_t j = 0; j < n_sites; ++j) new_dims[j] = site_dims[order[j]];

  std::vector<Eigen::Index> map(static_cast<std::size_t>(total));
  std::vector<int> digits(n_sites);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rest = idx;
    for (std::size_t s = n_sites; s-- > 0;) {
      digits[s] = static_cast<int>(rest % site_dims[s]);
      rest /= site_dims[s];
    }
    Eigen::Index mapped = 0;
    for (std::size_t j = 0; j < n_sites; ++j) mapped = mapped * new_dims[j] + digits[order[j]];
    map[static_cast<std::size_t>(idx)] = mapped;
  }
  ComplexMatrix out(total, total);
  for (Eigen::Index i = 0; i < total; ++i)
    for (Eigen::Index j = 0; j < total; ++j)
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = op(i, j);
  return out;
}

double hermiticity_error(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) { return hermiticity_error(a) < rel_tol; }

}  // namespace radpair
