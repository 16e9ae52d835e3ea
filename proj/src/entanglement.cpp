#include "rydent/entanglement.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "rydent/errors.hpp"

namespace rydent {

namespace {

void check_state(const GroundState& state, const Bipartition& part) {
    if (part.n_atoms != state.n_atoms)
        throw validation_error("schmidt_spectrum: bipartition is for " +
                               std::to_string(part.n_atoms) + " atoms, state has " +
                               std::to_string(state.n_atoms));
    if (state.amplitudes.size() != (std::size_t{1} << state.n_atoms))
        throw validation_error("schmidt_spectrum: amplitude vector length mismatch");
    double nrm2 = 0.0;
    for (double a : state.amplitudes) nrm2 += a * a;
    if (std::abs(nrm2 - 1.0) > 1e-9)
        throw validation_error("schmidt_spectrum: state is not normalized");
}

} // namespace

SchmidtSpectrum schmidt_spectrum(const GroundState& state, const Bipartition& part) {
    check_state(state, part);
    const auto rows = static_cast<Eigen::Index>(std::size_t{1} << part.size_a);
    const auto cols = static_cast<Eigen::Index>(std::size_t{1} << part.size_b);
    // basis index n = a + b * 2^|A|, so the column-major reshape is free
    Eigen::Map<const Eigen::MatrixXd> m(state.amplitudes.data(), rows, cols);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();

    SchmidtSpectrum spec;
    spec.eigenvalues.reserve(static_cast<std::size_t>(sv.size()));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        double lam = sv(i) * sv(i);
        if (lam < 0.0) {
            if (lam < -1e-10)
                throw numerical_error("schmidt_spectrum: eigenvalue " + std::to_string(lam) +
                                      " below clamping floor, SVD path is broken");
            lam = 0.0;
        }
        spec.eigenvalues.push_back(lam);
        sum += lam;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw numerical_error("schmidt_spectrum: spectrum sums to " + std::to_string(sum));
    return spec;
}

double von_neumann_entropy(const SchmidtSpectrum& spectrum) {
    double s = 0.0;
    for (double lam : spectrum.eigenvalues)
        if (lam > 0.0) s -= lam * std::log(lam);
    return s < 0.0 ? 0.0 : s;
}

GroundState project_filter_state(const GroundState& state, double p_min) {
    if (!(p_min >= 0.0) || p_min > 1.0)
        throw validation_error("project_filter_state: p_min must lie in [0, 1]");
    if (p_min == 0.0) return state;
    GroundState out = state;
    double kept = 0.0;
    for (double& a : out.amplitudes) {
        if (a * a >= p_min)
            kept += a * a;
        else
            a = 0.0;
    }
    if (kept <= 0.0)
        throw empty_filter_error("project_filter_state: no amplitude reaches p_min");
    const double scale = 1.0 / std::sqrt(kept);
    for (double& a : out.amplitudes)
        if (a != 0.0) a *= scale;
    return out;
}

double filtered_vn_entropy(const GroundState& state, const Bipartition& part, double p_min) {
    return von_neumann_entropy(schmidt_spectrum(project_filter_state(state, p_min), part));
}

} // namespace rydent
