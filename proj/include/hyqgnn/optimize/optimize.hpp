#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hyqgnn/errors.hpp"

namespace hyqgnn::optimize {

/// Loss substituted for non-finite objective values (e.g. an unencodable
/// all-zero weight matrix) so the search survives them.
inline constexpr double kPenaltyLoss = 1e12;

enum class Algorithm {
    kOnePlusOneEs,
    kDifferentialEvolution,
};

inline std::string to_string(Algorithm a) {
    return a == Algorithm::kOnePlusOneEs ? "one-plus-one-es" : "differential-evolution";
}

inline Algorithm algorithm_from_string(const std::string& name) {
    if (name == "one-plus-one-es") return Algorithm::kOnePlusOneEs;
    if (name == "differential-evolution") return Algorithm::kDifferentialEvolution;
    throw ConfigError("unknown algorithm '" + name + "' (want one-plus-one-es or differential-evolution)");
}

/// Budget-per-dimension rule: fewer than 50 evaluations per parameter favors
/// the local (1+1)-ES; at 50 or more the population-based DE is affordable.
inline Algorithm select_algorithm(std::size_t dim, std::size_t budget) {
    if (dim < 1 || budget < 1) throw ConfigError("select_algorithm needs dim >= 1 and budget >= 1");
    const double ratio = static_cast<double>(budget) / static_cast<double>(dim);
    return ratio < 50.0 ? Algorithm::kOnePlusOneEs : Algorithm::kDifferentialEvolution;
}

/// DE population size. The classic 4 + 3*floor(ln dim) rule is kept but
/// floored at 20: below that the rand/1 pool is too small to make progress
/// within a 2000-evaluation budget on even mildly conditioned objectives.
inline std::size_t de_population_size(std::size_t dim) {
    const std::size_t rule = 4 + 3 * static_cast<std::size_t>(std::floor(std::log(static_cast<double>(dim))));
    return std::max<std::size_t>(20, rule);
}

struct HistoryEntry {
    std::size_t iteration = 0;  // 1-based evaluation index
    double candidate_loss = 0.0;
    double best_loss = 0.0;
};

/// Ask/tell gradient-free minimizer. One instance is single-writer: calls
/// alternate ask -> tell -> ask -> ...; each pair consumes one evaluation.
class Optimizer {
public:
    Optimizer(std::size_t dim, std::size_t budget, std::uint64_t seed, Algorithm algorithm)
        : dim_(dim),
          budget_(budget),
          algorithm_(algorithm),
          rng_(seed),
          best_params_(dim, 0.0),
          es_parent_(dim, 0.0) {
        if (dim_ < 1) throw ConfigError("optimizer dimension must be >= 1");
        if (budget_ < 1) throw ConfigError("optimizer budget must be >= 1");
        if (algorithm_ == Algorithm::kDifferentialEvolution) {
            population_size_ = de_population_size(dim_);
            population_.reserve(population_size_);
            population_loss_.assign(population_size_, kPenaltyLoss);
        }
    }

    Optimizer(std::size_t dim, std::size_t budget, std::uint64_t seed)
        : Optimizer(dim, budget, seed, select_algorithm(dim, budget)) {}

    std::size_t dim() const { return dim_; }
    std::size_t budget() const { return budget_; }
    std::size_t eval_count() const { return eval_count_; }
    Algorithm algorithm() const { return algorithm_; }
    const std::vector<double>& best_params() const { return best_params_; }
    double best_loss() const { return best_loss_; }
    double sigma() const { return sigma_; }

    std::vector<double> ask() {
        if (eval_count_ >= budget_) {
            throw BudgetExhausted("budget of " + std::to_string(budget_) + " evaluations spent");
        }
        if (algorithm_ == Algorithm::kOnePlusOneEs) {
            if (eval_count_ == 0) {
                pending_ = es_parent_;  // canonical all-zeros first evaluation
            } else {
                pending_ = es_parent_;
                for (double& x : pending_) x += sigma_ * normal_(rng_);
            }
            return pending_;
        }
        // Differential evolution: fill the initial population first, then
        // cycle targets with rand/1/bin proposals drawn from the live pool.
        if (population_.size() < population_size_) {
            if (population_.empty()) {
                pending_ = std::vector<double>(dim_, 0.0);
            } else {
                pending_.assign(dim_, 0.0);
                for (double& x : pending_) x = normal_(rng_);
            }
            return pending_;
        }
        de_target_ = (eval_count_ - population_size_) % population_size_;
        const auto [r1, r2, r3] = pick_three_distinct(de_target_);
        pending_ = population_[de_target_];
        std::uniform_int_distribution<std::size_t> coord(0, dim_ - 1);
        const std::size_t jrand = coord(rng_);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t j = 0; j < dim_; ++j) {
            if (j == jrand || unit(rng_) < kCrossover) {
                pending_[j] = population_[r1][j] + kDifferentialWeight * (population_[r2][j] - population_[r3][j]);
            }
        }
        return pending_;
    }

    void tell(const std::vector<double>& candidate, double loss) {
        if (candidate.size() != dim_) {
            throw LayoutMismatch("told candidate of dimension " + std::to_string(candidate.size()) +
                                 ", optimizer runs in dimension " + std::to_string(dim_));
        }
        if (!std::isfinite(loss)) loss = kPenaltyLoss;
        if (loss < best_loss_) {
            best_loss_ = loss;
            best_params_ = candidate;
        }
        if (algorithm_ == Algorithm::kOnePlusOneEs) {
            if (eval_count_ == 0) {
                es_parent_ = candidate;
                es_parent_loss_ = loss;
            } else if (loss < es_parent_loss_) {
                es_parent_ = candidate;
                es_parent_loss_ = loss;
                sigma_ *= std::exp(kSigmaUp);  // one-fifth success rule
            } else {
                sigma_ *= std::exp(kSigmaDown);
            }
        } else {
            if (population_.size() < population_size_) {
                population_.push_back(candidate);
                population_loss_[population_.size() - 1] = loss;
            } else if (loss <= population_loss_[de_target_]) {
                population_[de_target_] = candidate;
                population_loss_[de_target_] = loss;
            }
        }
        ++eval_count_;
    }

private:
    static constexpr double kDifferentialWeight = 0.8;  // F
    static constexpr double kCrossover = 0.9;           // CR
    static constexpr double kSigmaUp = 0.8;
    static constexpr double kSigmaDown = -0.2;

    std::tuple<std::size_t, std::size_t, std::size_t> pick_three_distinct(std::size_t excluded) {
        std::uniform_int_distribution<std::size_t> pick(0, population_size_ - 1);
        std::size_t r1, r2, r3;
        do { r1 = pick(rng_); } while (r1 == excluded);
        do { r2 = pick(rng_); } while (r2 == excluded || r2 == r1);
        do { r3 = pick(rng_); } while (r3 == excluded || r3 == r1 || r3 == r2);
        return {r1, r2, r3};
    }

    std::size_t dim_;
    std::size_t budget_;
    Algorithm algorithm_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};

    std::size_t eval_count_ = 0;
    std::vector<double> best_params_;
    double best_loss_ = std::numeric_limits<double>::infinity();
    std::vector<double> pending_;

    // (1+1)-ES internals.
    std::vector<double> es_parent_;
    double es_parent_loss_ = std::numeric_limits<double>::infinity();
    double sigma_ = 1.0;

    // Differential-evolution internals.
    std::size_t population_size_ = 0;
    std::vector<std::vector<double>> population_;
    std::vector<double> population_loss_;
    std::size_t de_target_ = 0;
};

struct MinimizeResult {
    std::vector<double> best_params;
    double best_loss = std::numeric_limits<double>::infinity();
    std::vector<HistoryEntry> history;  // one entry per evaluation
};

/// Runs the full ask/tell loop to the budget. Objective exceptions surface
/// as penalty losses so a stray failure cannot abort a long run.
inline MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& objective, std::size_t dim,
                               std::size_t budget, std::uint64_t seed,
                               std::optional<Algorithm> algorithm = std::nullopt) {
    Optimizer opt(dim, budget, seed, algorithm.value_or(select_algorithm(dim, budget)));
    MinimizeResult result;
    result.history.reserve(budget);
    for (std::size_t it = 1; it <= budget; ++it) {
        const std::vector<double> candidate = opt.ask();
        double loss;
        try {
            loss = objective(candidate);
        } catch (const std::exception&) {
            loss = kPenaltyLoss;
        }
        if (!std::isfinite(loss)) loss = kPenaltyLoss;
        opt.tell(candidate, loss);
        result.history.push_back({it, loss, opt.best_loss()});
    }
    result.best_params = opt.best_params();
    result.best_loss = opt.best_loss();
    return result;
}

inline void write_loss_history_csv(const std::vector<HistoryEntry>& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "iteration,candidate_loss,best_loss\n";
    char line[96];
    for (const auto& h : history) {
        std::snprintf(line, sizeof line, "%zu,%.10e,%.10e\n", h.iteration, h.candidate_loss, h.best_loss);
        out << line;
    }
}

}  // namespace hyqgnn::optimize
