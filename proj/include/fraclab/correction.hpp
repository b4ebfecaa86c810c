#ifndef FRACLAB_CORRECTION_HPP
#define FRACLAB_CORRECTION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraclab/geometry.hpp"
#include "fraclab/norms.hpp"
#include "fraclab/params.hpp"
#include "fraclab/potential.hpp"
#include "fraclab/quadrature.hpp"

namespace fraclab {

/// Generator d^n/dy1^n d^j/da^j (a + |y|^2)^{-(N-2s)/2}, a = (scale * width)^2, in coordinates
/// y = R_i^{-1} x - x^1 around each center, summed with the center signs. Origin atoms are radial
/// profiles centered at 0 with a = (scale * r)^2 (class H only).
/// A width_mode atom is w d/dw of the bubble profile at width scale * w (derivative order n).
struct Atom {
  int n = 0;
  int j = 0;
  double scale = 1.0;
  bool origin = false;
  bool width_mode = false;
};

struct AtomTerm {
  double coef = 0.0;
  int y1_power = 0;
  int offset = 0;
};

struct BasisOptions {
  std::vector<int> orders{0, 1, 2, 3, 4};
  std::vector<double> scales{0.5, 1.0, 2.0, 4.0, 8.0};
  /// (n, scale) pairs that also get the j = 1 atom.
  std::vector<std::pair<int, double>> width_modes{{0, 1.0}, {1, 1.0}};
  std::vector<double> origin_scales{0.5, 1.0};
  /// Only the symmetrized kernel directions d/dy1 U and d/dw U.
  bool kernel_only = false;
};

struct GalerkinBasis {
  Ansatz ansatz;
  ProblemParams p;
  SymmetryClass cls = SymmetryClass::H;
  std::vector<Atom> atoms;
  std::vector<double> weight;
  /// Expansion of each atom and its fractional Laplacian in powers of y1 and (a + |y|^2)^{-1}.
  std::vector<std::vector<AtomTerm>> value_terms, laplacian_terms;
  std::vector<double> a_of;

  int size() const { return static_cast<int>(atoms.size()); }
  /// Atom values and their fractional Laplacians at x.
  void eval(const Vec& x, Eigen::Ref<Vec> values, Eigen::Ref<Vec> laplacians) const;
  void eval(const Vec& x, Eigen::Ref<Vec> values) const;
};

GalerkinBasis make_basis(const Ansatz& a, const ProblemParams& p, const BasisOptions& opt = {});

/// sum_i s_i |U_i|^{2*-2} Z_{i,l}, l = 0: d/dy1, l = 1: d/dw.
double kernel_weight(const Ansatz& a, const ProblemParams& p, int l, const Vec& x);

struct LinearSystem {
  GalerkinBasis basis;
  PotentialModel model;
  double nu = 1.0;
  /// S_ab = int b_a (-Delta)^s b_b, M_ab = (2*-1) int K |u|^{2*-2} b_a b_b.
  Eigen::MatrixXd S, M;
  /// Rows: the two kernel constraints, then int |u|^{2*-2} u b_a.
  Eigen::MatrixXd C;
  double asymmetry = 0.0;
  double gram_condition = 0.0;
  QuadDiagnostics diagnostics;
  bool converged = false;

  Eigen::MatrixXd form() const { return S - M; }
  Eigen::MatrixXd constraints() const { return C.topRows(2); }
};

LinearSystem assemble(const GalerkinBasis& basis, const PotentialModel& model, double nu,
                      const QuadratureSpec& spec);

struct Inertia {
  int negative = 0, zero = 0, positive = 0;
  double min_eigenvalue = 0.0;
  /// Smallest eigenvalue once int |u|^{2*-2} u phi = 0 is also imposed.
  double min_eigenvalue_orthogonal = 0.0;
};
Inertia constrained_inertia(const LinearSystem& sys);

/// h_a = int b_a H for H in the basis symmetry class.
Vec project(const LinearSystem& sys, const std::function<double(const Vec&)>& H,
            const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);
/// Columns h_a for several right-hand sides in one integral.
Eigen::MatrixXd project_many(const LinearSystem& sys,
                             const std::vector<std::function<double(const Vec&)>>& H,
                             const QuadratureSpec& spec);

struct CorrectionState {
  Vec coeffs;
  Eigen::Vector2d multipliers = Eigen::Vector2d::Zero();
  double constraint_residue = 0.0;
  double constraint_scale = 0.0;
  bool degenerate = false;
  double phi_star = 0.0;
  double residual_dstar = 0.0;
  double initial_residual_dstar = 0.0;
  std::vector<double> differences;
  std::vector<double> ratios;
  std::vector<double> phi_norms;
  int iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string message;
};

/// Galerkin KKT solve for h_a = int b_a H.
CorrectionState solve_linear(const LinearSystem& sys, const Vec& rhs);

/// Weighted least-squares collocation of L phi = H + sum c_l W_l on a point cloud, rows scaled by
/// the ||.||_** weight, with the kernel constraints imposed exactly.
struct Collocation {
  std::vector<Vec> points;
  Vec weights;
  Eigen::MatrixXd rows;
  Eigen::MatrixXd Z;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};
Collocation make_collocation(const LinearSystem& sys, const NormSpec& cloud);
CorrectionState solve_collocation(const LinearSystem& sys, const Collocation& col,
                                  const std::function<double(const Vec&)>& H);

double phi_eval(const LinearSystem& sys, const Vec& coeffs, const Vec& x);
/// L phi - l_k - N(phi) - sum c_l W_l at x.
double residual_eval(const LinearSystem& sys, const CorrectionState& st, const Vec& x);

/// Random right-hand side sum_i s_i sum_q c_q (y1/w_q)^{n_q} (1 + |y|^2/w_q^2)^{-(N+2s)/2} in the
/// basis coordinates around each center.
struct RhsGenerator {
  std::vector<double> coef, width;
  std::vector<int> order;
};
std::vector<RhsGenerator> random_generators(int count, std::uint64_t seed, int terms = 3);
double symmetric_rhs(const Ansatz& a, const ProblemParams& p, const RhsGenerator& g, const Vec& x);

struct FixedPointOptions {
  int max_iter = 12;
  double rel_tol = 1e-9;
  /// Trust region radius in ||.||_*; <= 0 selects nu^{-m/2}.
  double trust_radius = 0.0;
};

/// Galerkin iteration; the collocation overload needs no quadrature.
CorrectionState fixed_point(const LinearSystem& sys, const NormSpec& norms,
                            const QuadratureSpec& spec, const FixedPointOptions& opt = {});
CorrectionState fixed_point(const LinearSystem& sys, const Collocation& col, const NormSpec& norms,
                            const FixedPointOptions& opt = {});

}  // namespace fraclab

#endif  // FRACLAB_CORRECTION_HPP
