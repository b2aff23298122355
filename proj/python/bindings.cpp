#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrgxy/entanglement.hpp"

namespace py = pybind11;
using namespace qrgxy;

namespace {

py::array_t<double> mat_to_array(const Mat& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  auto buf = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
  return a;
}

Mat array_to_mat(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
  Mat m(std::size_t(a.shape(0)), std::size_t(a.shape(1)));
  auto buf = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(std::size_t(i), std::size_t(j)) = buf(i, j);
  return m;
}

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw std::invalid_argument("axis must be one of 'x', 'y', 'z'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "quantum renormalization group of the 2d anisotropic XY model";

  // spin algebra
  m.def(
      "pauli",
      [](const std::string& axis) {
        const PauliMatrix p = pauli(parse_axis(axis));
        return py::make_tuple(mat_to_array(p.m), p.imaginary_unit);
      },
      py::arg("axis"),
      "2x2 Pauli matrix in the real representation; returns (matrix, imaginary_unit_flag). "
      "For 'y' the matrix is i*sigma_y and the flag is set.");
  m.def(
      "two_site_coupling",
      [](const std::string& axis, int i, int j, int n) {
        return mat_to_array(two_site_coupling(parse_axis(axis), i, j, n).entries);
      },
      py::arg("axis"), py::arg("i"), py::arg("j"), py::arg("n"));
  m.def(
      "eigh_lowest",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& h, std::size_t k) {
        Mat hm = array_to_mat(h);
        int n = 0;
        while ((std::size_t{1} << n) < hm.rows()) ++n;
        auto [vals, vecs] = eigh_lowest(DenseOperator{n, std::move(hm)}, k);
        return py::make_tuple(vals, mat_to_array(vecs));
      },
      py::arg("h"), py::arg("k"), "k lowest eigenpairs of a symmetric matrix");
  m.def(
      "partial_trace_pair",
      [](const std::vector<double>& amplitudes, int i, int j) {
        return mat_to_array(partial_trace_pair(PureState(5, amplitudes), i, j).entries);
      },
      py::arg("amplitudes"), py::arg("i"), py::arg("j"));
  m.def(
      "projector_distance",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& p,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& q) {
        return projector_distance(array_to_mat(p), array_to_mat(q));
      },
      py::arg("p"), py::arg("q"));

  // block model
  m.def(
      "alpha_coefficients",
      [](double gamma) {
        const AlphaPair a = alpha_coefficients(gamma);
        return py::make_tuple(a.alpha1, a.alpha2);
      },
      py::arg("gamma"));
  m.def(
      "ground_coefficients",
      [](double gamma) {
        const GroundCoefficients c = ground_coefficients(gamma);
        py::dict d;
        d["coefficients"] = std::vector<double>(c.c.begin(), c.c.end());
        d["scale1"] = c.scale1;
        d["scale2"] = c.scale2;
        d["normalization_applied"] = c.normalization_applied;
        return d;
      },
      py::arg("gamma"));
  m.def(
      "block_hamiltonian",
      [](double j, double gamma) { return mat_to_array(build_block_hamiltonian({j, gamma}).entries); },
      py::arg("j"), py::arg("gamma"), "32x32 five-spin star Hamiltonian");
  m.def(
      "ground_energy", [](double j, double gamma) { return ground_energy_analytic({j, gamma}); },
      py::arg("j"), py::arg("gamma"));
  m.def(
      "ground_states",
      [](double gamma) {
        auto [phi1, phi2] = ground_states_analytic(gamma);
        return py::make_tuple(phi1.amplitudes, phi2.amplitudes);
      },
      py::arg("gamma"), "the degenerate ground doublet of the block Hamiltonian");
  m.def(
      "verify_ground_space",
      [](double j, double gamma, double tol) {
        const GroundSpaceReport r = verify_ground_space({j, gamma}, tol);
        py::dict d;
        d["gamma"] = r.gamma;
        d["e0_analytic"] = r.e0_analytic;
        d["e0_numeric"] = r.e0_numeric;
        d["energy_rel_error"] = r.energy_rel_error;
        d["degeneracy"] = r.degeneracy;
        d["doublet_split"] = r.doublet_split;
        d["gap_to_third"] = r.gap_to_third;
        d["projector_distance"] = r.projector_dist;
        d["residual1"] = r.residual1;
        d["residual2"] = r.residual2;
        d["numeric_substituted"] = r.numeric_substituted;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("j") = 1.0, py::arg("gamma") = 0.5, py::arg("tol") = 1e-8);

  // rg map
  m.def(
      "block_projector", [](double gamma) { return mat_to_array(block_projector(gamma)); },
      py::arg("gamma"));
  auto eta_dict = [](const EtaFactors& e) {
    py::dict d;
    d["eta1x"] = e.eta1x;
    d["eta1y"] = e.eta1y;
    d["etacx"] = e.etacx;
    d["etacy"] = e.etacy;
    return d;
  };
  m.def(
      "eta_factors_closed", [eta_dict](double gamma) { return eta_dict(eta_factors_closed(gamma)); },
      py::arg("gamma"));
  m.def(
      "eta_factors_operator",
      [eta_dict](double gamma) { return eta_dict(eta_factors_operator(gamma)); }, py::arg("gamma"));
  m.def(
      "rg_step",
      [](double gamma) {
        const RGStepResult r = rg_step(gamma);
        return py::make_tuple(r.gamma_prime, r.j_ratio);
      },
      py::arg("gamma"), "one renormalization step; returns (gamma_prime, j_ratio)");
  m.def("fixed_points", &fixed_points, py::arg("lo"), py::arg("hi"));
  m.def(
      "rg_iterate",
      [](double gamma0, int n) {
        const RGTrajectory t = rg_iterate(gamma0, n);
        std::vector<std::tuple<double, double, double>> rows;
        rows.reserve(t.steps.size());
        for (std::size_t k = 0; k < t.steps.size(); ++k)
          rows.emplace_back(t.steps[k].gamma, t.steps[k].j_cumulative,
                            RGTrajectory::effective_size(k));
        return rows;
      },
      py::arg("gamma0"), py::arg("n"),
      "flow of (gamma, cumulative J ratio, effective size 5^(k+1))");
  m.def(
      "effective_pair_coupling",
      [](double gamma, const std::vector<std::pair<int, int>>& bonds) {
        const PairCoupling p = effective_pair_coupling(gamma, bonds);
        return py::make_tuple(p.j_eff, p.gamma_eff);
      },
      py::arg("gamma"), py::arg("bonds"),
      "first-order effective (j_eff, gamma_eff) for the given corner-corner bonds");

  // entanglement
  m.def(
      "concurrence",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& rho) {
        return concurrence(TwoQubitDensity{array_to_mat(rho)});
      },
      py::arg("rho"));
  m.def(
      "pairwise_concurrences",
      [](double gamma) {
        const ConcurrenceSet s = pairwise_concurrences(gamma);
        py::dict d;
        d["pairs"] = std::vector<double>(s.pairs.begin(), s.pairs.end());
        d["cg"] = s.cg;
        return d;
      },
      py::arg("gamma"));
  m.def("cg_after_iterations", &cg_after_iterations, py::arg("gamma"), py::arg("n"));
  m.def(
      "cg_curve",
      [](int n, const std::vector<double>& grid, int threads) { return cg_curve(n, grid, threads); },
      py::arg("n"), py::arg("grid"), py::arg("threads") = 1);
  m.def(
      "derivative_curve",
      [](int n, const std::vector<double>& grid, double h, int threads) {
        const DerivativeCurve c = derivative_curve(n, grid, h, threads);
        py::dict d;
        d["n"] = c.n;
        d["grid"] = c.grid;
        d["values"] = c.values;
        d["gamma_max"] = c.gamma_max;
        d["d_max"] = c.d_max;
        return d;
      },
      py::arg("n"), py::arg("grid"), py::arg("h") = 1e-4, py::arg("threads") = 1);
  m.def(
      "locate_derivative_peak",
      [](int n, double h0) {
        const PeakEstimate p = locate_derivative_peak(n, h0);
        return py::make_tuple(p.gamma_max, p.d_max, p.h);
      },
      py::arg("n"), py::arg("h0") = 1e-4,
      "derivative peak with step-size control (gamma_max, d_max, h)");
  m.def(
      "scaling_fits",
      [](const std::vector<int>& n_list, double h0) {
        const ScalingFit f = scaling_fits(n_list, h0);
        py::dict d;
        std::vector<std::tuple<int, double, double, double>> pts;
        for (const ScalingPoint& p : f.points)
          pts.emplace_back(p.n, p.ln_size, p.gamma_max, p.d_max);
        d["points"] = pts;
        d["dmax_fit"] = py::make_tuple(f.dmax_fit.slope, f.dmax_fit.intercept, f.dmax_fit.r2);
        d["gmax_fit"] = py::make_tuple(f.gmax_fit.slope, f.gmax_fit.intercept, f.gmax_fit.r2);
        d["theta"] = f.theta;
        d["prefactor"] = f.prefactor;
        return d;
      },
      py::arg("n_list"), py::arg("h0") = 1e-4);
}
