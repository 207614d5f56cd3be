#include "rydconv/ensemble.hpp"

#include "rydconv/constants.hpp"
#include "rydconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydconv {

double maxwell_weight(double v, double temperature, double mass) {
    const double kT = constants::boltzmann * temperature;
    return std::sqrt(mass / (2.0 * constants::pi * kT))
         * std::exp(-mass * v * v / (2.0 * kT));
}

namespace {

VelocityGrid finish_grid(std::vector<double> nodes, double temperature, double mass) {
    std::sort(nodes.begin(), nodes.end());
    VelocityGrid g;
    g.nodes = std::move(nodes);
    const std::size_t n = g.nodes.size();
    g.weights.resize(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // trapezoid cell width on the (possibly nonuniform) node set
        double dv;
        if (i == 0) dv = 0.5 * (g.nodes[1] - g.nodes[0]);
        else if (i == n - 1) dv = 0.5 * (g.nodes[n - 1] - g.nodes[n - 2]);
        else dv = 0.5 * (g.nodes[i + 1] - g.nodes[i - 1]);
        g.weights[i] = maxwell_weight(g.nodes[i], temperature, mass) * dv;
        sum += g.weights[i];
    }
    for (double& w : g.weights) w /= sum;
    return g;
}

} // namespace

VelocityGrid VelocityGrid::composite(double temperature, double mass, double core,
                                     double core_step, int wing_points,
                                     double span_sigmas) {
    if (core <= 0.0 || core_step <= 0.0 || wing_points < 1)
        throw std::invalid_argument("VelocityGrid::composite: bad parameters");
    const double sigma = std::sqrt(constants::boltzmann * temperature / mass);
    const double vmax = span_sigmas * sigma;
    if (vmax <= core)
        return uniform(temperature, mass,
                       2 * static_cast<int>(std::ceil(vmax / core_step)) + 1, span_sigmas);
    const int ncore = static_cast<int>(std::round(core / core_step));
    std::vector<double> nodes;
    nodes.reserve(2 * (ncore + wing_points) + 1);
    for (int i = -ncore; i <= ncore; ++i) nodes.push_back(i * core_step);
    const double ratio = std::pow(vmax / core, 1.0 / wing_points);
    double v = core;
    for (int i = 0; i < wing_points; ++i) {
        v *= ratio;
        nodes.push_back(v);
        nodes.push_back(-v);
    }
    return finish_grid(std::move(nodes), temperature, mass);
}

VelocityGrid VelocityGrid::uniform(double temperature, double mass, int points,
                                   double span_sigmas) {
    if (points < 3 || points % 2 == 0)
        throw std::invalid_argument("VelocityGrid::uniform: need an odd point count >= 3");
    const double sigma = std::sqrt(constants::boltzmann * temperature / mass);
    const double vmax = span_sigmas * sigma;
    std::vector<double> nodes(points);
    for (int i = 0; i < points; ++i)
        nodes[i] = -vmax + 2.0 * vmax * i / (points - 1);
    nodes[(points - 1) / 2] = 0.0;
    return finish_grid(std::move(nodes), temperature, mass);
}

VelocityGrid VelocityGrid::from_config(const ConverterConfig& cfg) {
    if (cfg.velocity_grid_uniform)
        return uniform(cfg.temperature_cell, cfg.atomic_mass,
                       cfg.velocity_uniform_points, cfg.velocity_span_sigmas);
    return composite(cfg.temperature_cell, cfg.atomic_mass, cfg.velocity_core,
                     cfg.velocity_core_step, cfg.velocity_wing_points,
                     cfg.velocity_span_sigmas);
}

VelocityGrid VelocityGrid::single_class(double v) {
    VelocityGrid g;
    g.nodes = {v};
    g.weights = {1.0};
    return g;
}

bool VelocityGrid::valid(double* weight_sum_error) const {
    if (nodes.empty() || nodes.size() != weights.size()) return false;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (weights[i] < 0.0) return false;
        if (i > 0 && nodes[i] <= nodes[i - 1]) return false;
        sum += weights[i];
    }
    if (weight_sum_error) *weight_sum_error = std::abs(sum - 1.0);
    // symmetric about zero
    for (std::size_t i = 0, j = nodes.size() - 1; i < j; ++i, --j)
        if (std::abs(nodes[i] + nodes[j]) > 1e-9 * (std::abs(nodes[j]) + 1.0))
            return false;
    return std::abs(sum - 1.0) <= 1e-10;
}

BeamGrid BeamGrid::shells(double waist, int points, double cutoff_w0) {
    if (waist <= 0.0 || points < 1 || cutoff_w0 < 3.0)
        throw std::invalid_argument("BeamGrid::shells: bad parameters (cutoff >= 3 w0)");
    auto [x, w] = gauss_legendre(points, 0.0, cutoff_w0 * waist);
    BeamGrid g;
    g.nodes = std::move(x);
    g.weights.resize(points);
    double sum = 0.0;
    for (int i = 0; i < points; ++i) {
        g.weights[i] = w[i] * g.nodes[i]; // area element r dr
        sum += g.weights[i];
    }
    for (double& wi : g.weights) wi /= sum;
    return g;
}

BeamGrid BeamGrid::from_config(const ConverterConfig& cfg) {
    return shells(cfg.beam_waist, cfg.beam_points, cfg.beam_cutoff_w0);
}

BeamGrid BeamGrid::on_axis() {
    BeamGrid g;
    g.nodes = {0.0};
    g.weights = {1.0};
    return g;
}

EnsembleResponse average_response(const ConverterConfig& cfg,
                                  const VelocityGrid& vgrid, const BeamGrid& bgrid,
                                  const SteadyStateSolver& solver) {
    if (vgrid.nodes.empty() || bgrid.nodes.empty()
        || vgrid.nodes.size() != vgrid.weights.size()
        || bgrid.nodes.size() != bgrid.weights.size())
        throw std::invalid_argument("average_response: empty or inconsistent grid");

    Complex amplitude(0.0, 0.0);
    double intensity_incoherent = 0.0;
    double eit = 0.0;
    const double inv_w0_sq = 1.0 / (cfg.beam_waist * cfg.beam_waist);
    for (std::size_t ir = 0; ir < bgrid.nodes.size(); ++ir) {
        const double r = bgrid.nodes[ir];
        const double scale = std::exp(-r * r * inv_w0_sq);
        for (std::size_t iv = 0; iv < vgrid.nodes.size(); ++iv) {
            const double w = bgrid.weights[ir] * vgrid.weights[iv];
            try {
                const auto res = solver.solve(
                    build_hamiltonian(cfg, vgrid.nodes[iv], scale));
                const Complex rho_s = signal_coherence(res.state);
                amplitude += w * rho_s;
                intensity_incoherent += w * std::norm(rho_s);
                eit += w * eit_signal(res.state);
            } catch (const SingularLiouvillian& e) {
                throw SingularLiouvillian(
                    std::string(e.what()) + " (at node v=" + std::to_string(vgrid.nodes[iv])
                    + " m/s, r=" + std::to_string(r * 1e6) + " um)");
            }
        }
    }
    EnsembleResponse out;
    out.coherence_amplitude = amplitude;
    out.coherence_intensity = cfg.coherent_average ? std::norm(amplitude)
                                                   : intensity_incoherent;
    out.eit = eit;
    return out;
}

EnsembleResponse average_response(const ConverterConfig& cfg,
                                  const VelocityGrid& vgrid, const BeamGrid& bgrid) {
    SteadyStateSolver solver(build_jump_operators(cfg));
    return average_response(cfg, vgrid, bgrid, solver);
}

EnsembleResponse average_response(const ConverterConfig& cfg) {
    return average_response(cfg, VelocityGrid::from_config(cfg), BeamGrid::from_config(cfg));
}

} // namespace rydconv
