#include "radpair/eigensystem.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "radpair/errors.hpp"
#include "radpair/tolerances.hpp"

namespace radpair {

namespace {

std::atomic<std::uint64_t> g_decompositions{0};

void normalize_phase(ComplexMatrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    auto col = vectors.col(j);
    const double largest = col.cwiseAbs().maxCoeff();
    if (largest == 0.0) continue;
    Eigen::Index pivot = 0;
    while (std::abs(col(pivot)) < largest * (1.0 - 1e-9)) ++pivot;
    const Complex phase = std::conj(col(pivot)) / std::abs(col(pivot));
    col *= phase;
    col(pivot) = Complex(col(pivot).real(), 0.0);
  }
}

// Groups ascending values whose neighbour gap is within `threshold`.
std::vector<std::vector<std::size_t>> group_sorted(const Eigen::VectorXd& values, double threshold) {
  std::vector<std::vector<std::size_t>> groups;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (groups.empty() || values(i) - values(i - 1) > threshold) groups.emplace_back();
    groups.back().push_back(static_cast<std::size_t>(i));
  }
  return groups;
}

void rotate_cluster(ComplexMatrix& block, std::span<const ComplexMatrix> perturbations, std::size_t level) {
  if (level >= perturbations.size() || block.cols() < 2) return;
  const ComplexMatrix& p = perturbations[level];
  ComplexMatrix projected = block.adjoint() * p * block;
  projected = 0.5 * (projected + projected.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(projected);
  if (solver.info() != Eigen::Success) throw NumericalError("degeneracy resolution failed");
  block = (block * solver.eigenvectors()).eval();

  const Eigen::VectorXd& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (const auto& group : group_sorted(values, 1e-8 * scale)) {
    if (group.size() < 2) continue;
    const Eigen::Index first = static_cast<Eigen::Index>(group.front());
    const Eigen::Index count = static_cast<Eigen::Index>(group.size());
    ComplexMatrix sub = block.middleCols(first, count);
    rotate_cluster(sub, perturbations, level + 1);
    block.middleCols(first, count) = sub;
  }
}

}  // namespace

EigenSystem eigendecompose(const ComplexMatrix& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw NumericalError("eigendecompose needs a non-empty square matrix");
  if (!h.allFinite()) throw NumericalError("matrix has non-finite entries");
  if (!is_hermitian(h, tol::kHermitian)) throw NumericalError("matrix is not Hermitian");
  g_decompositions.fetch_add(1, std::memory_order_relaxed);

  const ComplexMatrix symmetric = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetric);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");

  EigenSystem out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = solver.eigenvectors();
  normalize_phase(out.vectors);
  return out;
}

std::uint64_t decomposition_count() { return g_decompositions.load(); }
void reset_decomposition_count() { g_decompositions.store(0); }

std::vector<std::vector<std::size_t>> degenerate_clusters(std::span<const double> values, double rel_threshold) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return group_sorted(v, rel_threshold * scale);
}

void resolve_degeneracies(EigenSystem& system, std::span<const ComplexMatrix> perturbations, double rel_threshold) {
  for (const auto& cluster : degenerate_clusters(system.values, rel_threshold)) {
    if (cluster.size() < 2) continue;
    const Eigen::Index first = static_cast<Eigen::Index>(cluster.front());
    const Eigen::Index count = static_cast<Eigen::Index>(cluster.size());
    ComplexMatrix block = system.vectors.middleCols(first, count);
    rotate_cluster(block, perturbations, 0);
    system.vectors.middleCols(first, count) = block;
  }
  normalize_phase(system.vectors);
}

double eigen_residual(const ComplexMatrix& h, const EigenSystem& system) {
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(system.values.size()));
  for (std::size_t i = 0; i < system.values.size(); ++i) lambda(static_cast<Eigen::Index>(i)) = system.values[i];
  const ComplexMatrix r = h * system.vectors - system.vectors * lambda.asDiagonal();
  const double norm = h.norm();
  return norm == 0.0 ? r.norm() : r.norm() / norm;
}

double orthonormality_error(const EigenSystem& system) {
  const auto n = system.vectors.cols();
  return (system.vectors.adjoint() * system.vectors - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

std::vector<LevelOverlap> singlet_overlap_levels(const RadicalPairSpec& spec, double field_uT,
                                                 const std::optional<NuclearConfig>& nuclei,
                                                 const PhysicalConstants& constants, bool include_zero_weight) {
  const ComplexMatrix h = build_hamiltonian(spec, field_uT, constants);
  EigenSystem system = eigendecompose(h);
  const ComplexMatrix projector = singlet_projector(spec);
  const ComplexMatrix perturbations[] = {electron_zeeman_operator(spec), nuclear_iz_operator(spec), projector};
  resolve_degeneracies(system, perturbations, tol::kDegeneracy);

  const ComplexMatrix rho = nuclei ? singlet_density_with_nuclei(spec, *nuclei) : initial_density(spec, BornState::Singlet);
  std::vector<LevelOverlap> levels;
  for (Eigen::Index j = 0; j < system.vectors.cols(); ++j) {
    const auto v = system.vectors.col(j);
    const double weight = (v.adjoint() * rho * v)(0, 0).real();
    if (!include_zero_weight && weight <= tol::kOverlapFloor) continue;
    levels.push_back({static_cast<std::size_t>(j), to_field_uT(system.values[static_cast<std::size_t>(j)], constants), weight});
  }
  return levels;
}

AnalyticCoefficients AnalyticCoefficients::from(double a, double b) {
  AnalyticCoefficients c;
  c.alpha = b - a / 4.0;
  c.xi = std::sqrt(c.alpha * c.alpha + a * a / 4.0);
  c.delta = std::sqrt(c.alpha * c.alpha + 4.0 * a * a);
  c.eta = 4.0 * b - 3.0 * a;
  return c;
}

std::vector<AnalyticResidual> analytic_eigvec_residuals(double a, double b) {
  auto sgn = [](double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); };
  // |A N B⟩ with up = 0
  auto idx = [](int ea, int n, int eb) { return 4 * ea + 2 * n + eb; };
  const AnalyticCoefficients c = AnalyticCoefficients::from(a, b);
  const double r5 = std::sqrt(5.0);

  std::vector<ComplexVector> psi(8, ComplexVector::Zero(8));
  psi[0](idx(0, 0, 0)) = 1.0;
  psi[1](idx(0, 0, 1)) = 1.0;
  psi[2](idx(0, 1, 0)) = c.alpha / c.xi;
  psi[2](idx(1, 0, 0)) = 2.0 * a / c.delta;
  psi[3](idx(0, 1, 1)) = -1.0 / r5;
  psi[3](idx(1, 0, 1)) = -2.0 * sgn(c.alpha) / r5;
  psi[4](idx(0, 1, 0)) = a / (2.0 * c.xi);
  psi[4](idx(1, 0, 0)) = -4.0 * c.alpha / c.delta;
  psi[5](idx(0, 1, 1)) = 2.0 / r5;
  psi[5](idx(1, 0, 1)) = -sgn(c.eta) / r5;
  psi[6](idx(1, 1, 0)) = 1.0;
  psi[7](idx(1, 1, 1)) = -sgn(c.alpha);

  const RadicalPairSpec spec = spin_half_nuclei_on_a({a});
  const ComplexMatrix h = build_hamiltonian(spec, b, PhysicalConstants{1e6});
  const EigenSystem exact = eigendecompose(h);
  const auto clusters = degenerate_clusters(exact.values, tol::kDegeneracy);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<AnalyticResidual> out;
  for (int s = 0; s < 8; ++s) {
    const ComplexVector& v = psi[static_cast<std::size_t>(s)];
    AnalyticResidual r;
    r.state = s + 1;
    r.norm = v.norm();
    if (!(r.norm > 0.0) || !std::isfinite(r.norm)) {
      r.rayleigh_uT = nan;
      r.residual_uT = r.norm == 0.0 ? 0.0 : nan;
      r.exact_subspace_weight = nan;
      out.push_back(r);
      continue;
    }
    const ComplexVector hv = h * v;
    r.rayleigh_uT = v.dot(hv).real() / (r.norm * r.norm);
    r.residual_uT = (hv - r.rayleigh_uT * v).norm();

    std::size_t nearest = 0;
    for (std::size_t j = 1; j < exact.values.size(); ++j)
      if (std::abs(exact.values[j] - r.rayleigh_uT) < std::abs(exact.values[nearest] - r.rayleigh_uT)) nearest = j;
    const ComplexVector unit = v / r.norm;
    for (const auto& cluster : clusters) {
      if (std::find(cluster.begin(), cluster.end(), nearest) == cluster.end()) continue;
      for (std::size_t j : cluster)
        r.exact_subspace_weight += std::norm(exact.vectors.col(static_cast<Eigen::Index>(j)).dot(unit));
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace radpair
