#include "mvlab/market.hpp"

#include <cmath>
#include <string>

namespace mvlab {

void PricePath::validate() const {
    grid.validate();
    if (prices.size() != static_cast<std::size_t>(grid.total_points()))
        throw invalid_spec_error("PricePath: length must equal burn_in + steps + 1");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0))
            throw data_error("PricePath: non-positive price at offset " + std::to_string(i),
                             static_cast<long>(i));
    }
    if (!true_mu.empty() && (true_mu.size() != prices.size() || true_sigma.size() != prices.size()))
        throw invalid_spec_error("PricePath: truth series must match the grid");
}

namespace {

struct GbmCoeffs {
    std::function<double(double)> mu;
    std::function<double(double)> sigma;
};

GbmCoeffs gbm_coefficients(const MarketSpec& spec) {
    if (const auto* c = std::get_if<GbmParams>(&spec.model)) {
        const double mu = c->mu;
        const double sigma = c->sigma;
        return {[mu](double) { return mu; }, [sigma](double) { return sigma; }};
    }
    if (const auto* f = std::get_if<FunctionalGbmParams>(&spec.model)) {
        if (!f->mu || !f->sigma)
            throw invalid_spec_error("functional GBM: mu(t) and sigma(t) must be set");
        return {f->mu, f->sigma};
    }
    throw invalid_spec_error("simulate_gbm_path: spec is not a GBM variant");
}

}  // namespace

PricePath simulate_gbm_path(const MarketSpec& spec, const TimeGrid& grid, NormalSource& normals) {
    grid.validate();
    const auto coeffs = gbm_coefficients(spec);
    const double r = spec.risk_free;
    const double dt = grid.dt();
    const double sqrt_dt = std::sqrt(dt);
    const int n = grid.total_points();

    PricePath path;
    path.grid = grid;
    path.prices.resize(n);
    path.true_mu.resize(n);
    path.true_sigma.resize(n);

    for (int k = grid.first_index(); k <= grid.last_index(); ++k) {
        const double t = grid.time_at(k);
        const double sigma = coeffs.sigma(t);
        if (!(sigma > 0.0))
            throw invalid_spec_error("simulate_gbm_path: sigma(t) must be positive at t = " +
                                     std::to_string(t));
        path.true_mu[k + grid.burn_in_steps] = coeffs.mu(t);
        path.true_sigma[k + grid.burn_in_steps] = sigma;
    }

    path.prices[0] = 1.0;
    for (int k = grid.first_index(); k < grid.last_index(); ++k) {
        const std::size_t i = static_cast<std::size_t>(k + grid.burn_in_steps);
        const double mu = path.true_mu[i];
        const double sigma = path.true_sigma[i];
        const double z = normals.next();
        path.prices[i + 1] =
            path.prices[i] * std::exp((mu - r - 0.5 * sigma * sigma) * dt + sigma * sqrt_dt * z);
    }
    return path;
}

PricePath simulate_gbm_path(const MarketSpec& spec, const TimeGrid& grid, const RngSeed& seed) {
    SeededNormals normals({seed.master_seed, seed.path_index, 0});
    return simulate_gbm_path(spec, grid, normals);
}

PricePath simulate_heston_path(const MarketSpec& spec, const TimeGrid& grid,
                               NormalSource& price_normals, NormalSource& var_normals) {
    grid.validate();
    const auto* h = std::get_if<HestonParams>(&spec.model);
    if (h == nullptr)
        throw invalid_spec_error("simulate_heston_path: spec is not a Heston model");
    if (!(h->initial_var > 0.0))
        throw invalid_spec_error("simulate_heston_path: initial variance must be positive");
    if (h->reversion < 0.0 || h->vol_of_vol < 0.0)
        throw invalid_spec_error("simulate_heston_path: reversion and vol-of-vol must be >= 0");
    if (h->correlation < -1.0 || h->correlation > 1.0)
        throw invalid_spec_error("simulate_heston_path: correlation must lie in [-1, 1]");

    const double r = spec.risk_free;
    const double dt = grid.dt();
    const double sqrt_dt = std::sqrt(dt);
    const double rho = h->correlation;
    const double rho_orth = std::sqrt(1.0 - rho * rho);
    const int n = grid.total_points();

    PricePath path;
    path.grid = grid;
    path.prices.resize(n);
    path.true_mu.resize(n);
    path.true_sigma.resize(n);

    double s = 1.0;
    double x = h->initial_var;  // variance starts at X0 at the earliest simulated time
    for (int k = grid.first_index(); k <= grid.last_index(); ++k) {
        const std::size_t i = static_cast<std::size_t>(k + grid.burn_in_steps);
        const double x_pos = std::max(x, 0.0);
        path.prices[i] = s;
        path.true_mu[i] = h->drift_slope * x_pos + r;
        path.true_sigma[i] = std::sqrt(std::max(x, kVarianceFloor));
        if (k == grid.last_index())
            break;

        const double z1 = price_normals.next();
        const double z2 = var_normals.next();
        const double sx = std::sqrt(x_pos);
        s = s * (1.0 + h->drift_slope * x_pos * dt + sx * sqrt_dt * z1);
        if (!(s > 0.0))
            throw data_error("simulate_heston_path: price became non-positive at grid index " +
                             std::to_string(k + 1), k + 1);
        x = x + h->reversion * (h->long_run_var - x_pos) * dt +
            h->vol_of_vol * sx * sqrt_dt * (rho * z1 + rho_orth * z2);
    }
    return path;
}

PricePath simulate_heston_path(const MarketSpec& spec, const TimeGrid& grid, const RngSeed& seed) {
    SeededNormals price_normals({seed.master_seed, seed.path_index, 0});
    SeededNormals var_normals({seed.master_seed, seed.path_index, 1});
    return simulate_heston_path(spec, grid, price_normals, var_normals);
}

PricePath simulate_path(const MarketSpec& spec, const TimeGrid& grid, const RngSeed& seed) {
    if (spec.is_heston())
        return simulate_heston_path(spec, grid, seed);
    return simulate_gbm_path(spec, grid, seed);
}

PricePath discount_prices(std::span<const double> raw_prices, const TimeGrid& grid, double risk_free) {
    grid.validate();
    if (raw_prices.size() != static_cast<std::size_t>(grid.total_points()))
        throw data_error("discount_prices: expected one raw price per grid time");

    PricePath path;
    path.grid = grid;
    path.prices.resize(raw_prices.size());
    const double dt = grid.dt();
    for (std::size_t i = 0; i < raw_prices.size(); ++i) {
        if (!(raw_prices[i] > 0.0))
            throw data_error("discount_prices: non-positive raw price at index " + std::to_string(i),
                             static_cast<long>(i));
        // t measured from the series start, not from the grid origin
        path.prices[i] = raw_prices[i] * std::exp(-risk_free * (static_cast<double>(i) * dt));
    }
    return path;
}

}  // namespace mvlab
