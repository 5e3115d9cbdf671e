#include "ecibo/ga.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecibo {

namespace {

constexpr double kSpreadEps = 1e-14;

/// Spread factor of the SBX distribution for a uniform draw u.
double sbx_spread(double u, double eta) {
  if (u <= 0.5) {
    return std::pow(2.0 * u, 1.0 / (eta + 1.0));
  }
  return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> sbx_crossover(
    const Eigen::VectorXd& p1, const Eigen::VectorXd& p2, double eta,
    const Bounds& bounds, RngStream& rng) {
  if (p1.size() != p2.size() ||
      p1.size() != static_cast<Eigen::Index>(bounds.size())) {
    throw std::invalid_argument("sbx_crossover: dimension mismatch");
  }
  Eigen::VectorXd c1 = p1;
  Eigen::VectorXd c2 = p2;
  for (Eigen::Index j = 0; j < p1.size(); ++j) {
    if (rng.uniform() > 0.5) continue;  // exchange each variable w.p. 1/2
    if (std::abs(p1[j] - p2[j]) < kSpreadEps) continue;
    const double beta = sbx_spread(rng.uniform(), eta);
    const double sum = p1[j] + p2[j];
    const double diff = p1[j] - p2[j];
    c1[j] = 0.5 * (sum + beta * diff);
    c2[j] = 0.5 * (sum - beta * diff);
  }
  for (Eigen::Index j = 0; j < c1.size(); ++j) {
    const auto& b = bounds[static_cast<std::size_t>(j)];
    c1[j] = clip(c1[j], b.lo, b.hi);
    c2[j] = clip(c2[j], b.lo, b.hi);
  }
  return {std::move(c1), std::move(c2)};
}

double polynomial_mutation_value(double x, double u, double eta, double lo,
                                 double hi) {
  const double range = hi - lo;
  if (range <= 0.0) return x;
  const double mut_pow = 1.0 / (eta + 1.0);
  double deltaq;
  if (u < 0.5) {
    const double d1 = (x - lo) / range;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
    deltaq = std::pow(val, mut_pow) - 1.0;
  } else {
    const double d2 = (hi - x) / range;
    const double val =
        2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
    deltaq = 1.0 - std::pow(val, mut_pow);
  }
  return clip(x + deltaq * range, lo, hi);
}

Eigen::VectorXd polynomial_mutation(const Eigen::VectorXd& x, double eta,
                                    double p_mut, const Bounds& bounds,
                                    RngStream& rng) {
  if (x.size() != static_cast<Eigen::Index>(bounds.size())) {
    throw std::invalid_argument("polynomial_mutation: dimension mismatch");
  }
  Eigen::VectorXd out = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (rng.uniform() < p_mut) {
      const auto& b = bounds[static_cast<std::size_t>(j)];
      out[j] = polynomial_mutation_value(x[j], rng.uniform(), eta, b.lo, b.hi);
    }
  }
  return out;
}

std::size_t tournament_select(const std::vector<double>& fitness, int k,
                              RngStream& rng) {
  if (fitness.empty()) {
    throw std::invalid_argument("tournament_select: empty population");
  }
  if (k < 1) {
    throw std::invalid_argument("tournament_select: k must be >= 1");
  }
  std::size_t best = rng.index(fitness.size());
  for (int j = 1; j < k; ++j) {
    const std::size_t c = rng.index(fitness.size());
    if (fitness[c] > fitness[best] || (fitness[c] == fitness[best] && c < best)) {
      best = c;
    }
  }
  return best;
}

GaResult ga_maximize(const std::function<double(const Eigen::VectorXd&)>& objective,
                     const Bounds& bounds, const GaConfig& cfg, RngStream& rng) {
  const auto k = static_cast<Eigen::Index>(bounds.size());
  if (k == 0) throw std::invalid_argument("ga_maximize: empty bounds");
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi)) {
      throw std::invalid_argument("ga_maximize: bounds must be finite");
    }
  }
  if (cfg.pop_size < 2 || cfg.max_gen < 1) {
    throw std::invalid_argument("ga_maximize: need pop_size >= 2, max_gen >= 1");
  }
  const double p_mut =
      cfg.p_mutation >= 0.0 ? cfg.p_mutation : 1.0 / static_cast<double>(k);
  const double neg_inf = -std::numeric_limits<double>::infinity();

  auto safe_eval = [&](const Eigen::VectorXd& x) {
    const double v = objective(x);
    return std::isfinite(v) ? v : neg_inf;
  };

  std::vector<Eigen::VectorXd> pop(static_cast<std::size_t>(cfg.pop_size));
  std::vector<double> fitness(pop.size());
  for (auto& ind : pop) {
    ind.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& b = bounds[static_cast<std::size_t>(j)];
      ind[j] = rng.uniform(b.lo, b.hi);
    }
  }
  for (std::size_t i = 0; i < pop.size(); ++i) fitness[i] = safe_eval(pop[i]);

  Eigen::VectorXd best_x = pop[0];
  double best_f = fitness[0];
  for (std::size_t i = 1; i < pop.size(); ++i) {
    if (fitness[i] > best_f) {
      best_f = fitness[i];
      best_x = pop[i];
    }
  }

  std::vector<Eigen::VectorXd> offspring;
  std::vector<double> offspring_fit;
  offspring.reserve(pop.size());
  offspring_fit.reserve(pop.size());
  for (int gen = 0; gen < cfg.max_gen; ++gen) {
    offspring.clear();
    offspring_fit.clear();
    while (offspring.size() < pop.size()) {
      const std::size_t i1 = tournament_select(fitness, cfg.tournament_size, rng);
      const std::size_t i2 = tournament_select(fitness, cfg.tournament_size, rng);
      Eigen::VectorXd c1, c2;
      if (rng.uniform() < cfg.p_crossover) {
        std::tie(c1, c2) = sbx_crossover(pop[i1], pop[i2], cfg.eta_crossover,
                                         bounds, rng);
      } else {
        c1 = pop[i1];
        c2 = pop[i2];
      }
      offspring.push_back(
          polynomial_mutation(c1, cfg.eta_mutation, p_mut, bounds, rng));
      if (offspring.size() < pop.size()) {
        offspring.push_back(
            polynomial_mutation(c2, cfg.eta_mutation, p_mut, bounds, rng));
      }
    }
    for (std::size_t i = 0; i < offspring.size(); ++i) {
      offspring_fit.push_back(safe_eval(offspring[i]));
      if (offspring_fit[i] > best_f) {
        best_f = offspring_fit[i];
        best_x = offspring[i];
      }
    }
    pop.swap(offspring);
    fitness.swap(offspring_fit);

    // single-individual elitism: keep the best-so-far in the population
    std::size_t worst = 0;
    double gen_best = fitness[0];
    for (std::size_t i = 0; i < fitness.size(); ++i) {
      if (fitness[i] < fitness[worst]) worst = i;
      if (fitness[i] > gen_best) gen_best = fitness[i];
    }
    if (gen_best < best_f) {
      pop[worst] = best_x;
      fitness[worst] = best_f;
    }
  }
  return GaResult{std::move(best_x), best_f};
}

}  // namespace ecibo
