#include "rydconv/master_equation.hpp"

#include <cmath>

namespace rydconv {

namespace {

constexpr Complex I(0.0, 1.0);

inline int vec_index(int row, int col) { return col * 5 + row; }

// adds -i(H rho - rho H) to the superoperator
void add_hamiltonian_part(Matrix25c& L, const Matrix5c& H) {
    // vec(H rho): (I (x) H); vec(rho H): (H^T (x) I)
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k) {
                L(vec_index(i, j), vec_index(k, j)) -= I * H(i, k);
                L(vec_index(i, j), vec_index(i, k)) += I * H(k, j);
            }
}

Matrix25c jump_superoperator(const std::vector<Matrix5c>& jumps) {
    Matrix25c L = Matrix25c::Zero();
    for (const Matrix5c& J : jumps) {
        const Matrix5c JdJ = J.adjoint() * J;
        for (int j = 0; j < 5; ++j)
            for (int i = 0; i < 5; ++i)
                for (int k = 0; k < 5; ++k) {
                    for (int l = 0; l < 5; ++l)
                        L(vec_index(i, j), vec_index(k, l)) += J(i, k) * std::conj(J(j, l));
                    L(vec_index(i, j), vec_index(k, j)) -= 0.5 * JdJ(i, k);
                    L(vec_index(i, j), vec_index(i, k)) -= 0.5 * JdJ(k, j);
                }
    }
    return L;
}

} // namespace

Matrix5c build_hamiltonian(const ConverterConfig& cfg, double velocity, double beam_scale) {
    const double dp = cfg.detuning_probe - cfg.wavevector_probe * velocity;
    const double dc = cfg.detuning_coupling - cfg.wavevector_coupling * velocity;
    const double dmw = cfg.detuning_mw - cfg.wavevector_mw * velocity;
    const double dd = cfg.detuning_decoupling - cfg.wavevector_decoupling * velocity;

    const double delta_e = dp;
    const double delta_r1 = dp + dc;
    const double delta_r2 = dp + dc + dmw;
    const double delta_s = dp + dc + dmw - dd;

    Matrix5c H = Matrix5c::Zero();
    H(LvlE, LvlE) = -delta_e;
    H(LvlR1, LvlR1) = -delta_r1;
    H(LvlR2, LvlR2) = -delta_r2;
    H(LvlS, LvlS) = -delta_s;
    H(LvlG, LvlE) = H(LvlE, LvlG) = beam_scale * cfg.rabi_probe / 2.0;
    H(LvlE, LvlR1) = H(LvlR1, LvlE) = beam_scale * cfg.rabi_coupling / 2.0;
    H(LvlR1, LvlR2) = H(LvlR2, LvlR1) = cfg.rabi_mw / 2.0;
    H(LvlR2, LvlS) = H(LvlS, LvlR2) = beam_scale * cfg.rabi_decoupling / 2.0;
    return H;
}

std::vector<Matrix5c> build_jump_operators(const ConverterConfig& cfg) {
    std::vector<Matrix5c> ops;
    auto lowering = [&](int to, int from, double rate) {
        if (rate <= 0.0) return;
        Matrix5c J = Matrix5c::Zero();
        J(to, from) = std::sqrt(rate);
        ops.push_back(J);
    };
    lowering(LvlG, LvlE, cfg.decay_e);
    lowering(LvlE, LvlR1, cfg.decay_r1);
    lowering(LvlR1, LvlR2, cfg.decay_r2);
    lowering(LvlE, LvlS, cfg.decay_s);
    if (cfg.transit_rate > 0.0)
        for (int k = 0; k < 5; ++k)
            lowering(LvlG, k, cfg.transit_rate);
    if (cfg.dephasing > 0.0)
        for (int k = 0; k < 5; ++k) {
            Matrix5c J = Matrix5c::Zero();
            J(k, k) = std::sqrt(cfg.dephasing);
            ops.push_back(J);
        }
    return ops;
}

Matrix25c liouvillian_matrix(const Matrix5c& hamiltonian, const std::vector<Matrix5c>& jumps) {
    Matrix25c L = jump_superoperator(jumps);
    add_hamiltonian_part(L, hamiltonian);
    return L;
}

Matrix5c apply_liouvillian(const Matrix5c& H, const std::vector<Matrix5c>& jumps,
                           const Matrix5c& rho) {
    Matrix5c out = -I * (H * rho - rho * H);
    for (const Matrix5c& J : jumps) {
        const Matrix5c JdJ = J.adjoint() * J;
        out += J * rho * J.adjoint() - 0.5 * (JdJ * rho + rho * JdJ);
    }
    return out;
}

SteadyStateSolver::SteadyStateSolver(std::vector<Matrix5c> jumps)
    : jumps_(std::move(jumps)), jump_superop_(jump_superoperator(jumps_)) {}

SteadyStateSolver::Result SteadyStateSolver::solve(const Matrix5c& H) const {
    Matrix25c L = jump_superop_;
    add_hamiltonian_part(L, H);
    const double l_norm = L.norm();
    if (l_norm == 0.0)
        throw SingularLiouvillian("zero Liouvillian: no dynamics at all");

    Matrix25c A = L;
    A.row(0).setZero();
    for (int k = 0; k < 5; ++k) A(0, vec_index(k, k)) = 1.0;
    Vector25c b = Vector25c::Zero();
    b(0) = 1.0;

    const Eigen::PartialPivLU<Matrix25c> lu(A);
    Vector25c x = lu.solve(b);
    double residual = x.allFinite() ? (L * x).norm() / l_norm : INFINITY;

    // a degenerate Liouvillian can still yield a consistent constrained
    // system (any point of the affine solution set has zero residual), so
    // uniqueness is guarded by the pivot spread of the factorization
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const bool suspicious = pivots.minCoeff() <= 1e-10 * pivots.maxCoeff();

    if (suspicious || !(residual <= residual_tolerance) || std::abs(x.sum()) > 1e3) {
        // the constrained solve failed; classify via the null space of L
        Eigen::JacobiSVD<Matrix25c> svd(L, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int null_dim = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) <= null_space_tolerance * sv(0)) ++null_dim;
        if (null_dim != 1)
            throw SingularLiouvillian("Liouvillian null space dimension "
                                      + std::to_string(null_dim) + ", expected 1");
        x = svd.matrixV().col(24);
        const Complex tr = x(0) + x(6) + x(12) + x(18) + x(24);
        if (std::abs(tr) < 1e-12)
            throw SingularLiouvillian("null vector is traceless; no normalizable steady state");
        x /= tr;
        residual = (L * x).norm() / l_norm;
    }

    DensityMatrix dm;
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i)
            dm.rho(i, j) = x(vec_index(i, j));
    // the solution of the linear system is Hermitian only up to round-off;
    // symmetrize so downstream invariants hold exactly
    dm.rho = 0.5 * (dm.rho + dm.rho.adjoint()).eval();
    return {dm, residual};
}

DensityMatrix steady_state(const Matrix5c& H, const std::vector<Matrix5c>& jumps) {
    return SteadyStateSolver(jumps).solve(H).state;
}

} // namespace rydconv
