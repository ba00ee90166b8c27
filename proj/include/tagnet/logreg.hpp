#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tagnet/error.hpp"

namespace tagnet {

struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;  // 0/1

    std::size_t width() const { return feature_names.size(); }
    std::size_t size() const { return rows.size(); }
    void validate() const;
};

// Per-column z-score parameters, fit on training rows only. Constant
// columns keep stdev 1 so they standardize to zero.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stdev;

    void fit(const std::vector<std::vector<double>>& rows);
    std::vector<double> apply(std::span<const double> row) const;
};

struct TrainOptions {
    double lambda = 1e-3;  // L2 strength; intercept unpenalized
    double tol = 1e-8;     // gradient-norm stopping criterion
    int max_iter = 5000;
};

struct ConvergenceRecord {
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false;
};

struct Model {
    std::vector<std::string> feature_names;
    Standardizer scaler;
    std::vector<double> weights;
    double intercept = 0.0;
    double lambda = 0.0;
    ConvergenceRecord convergence;

    // Sigmoid of the standardized affine score, clamped to (1e-12, 1-1e-12).
    double predict(std::span<const double> row) const;

    void save(const std::filesystem::path& path) const;
    static Model load(const std::filesystem::path& path);
};

struct Metrics {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    static Metrics from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t tn,
                               std::uint64_t fn);
};

struct CvResult {
    Metrics mean;                   // rates are unweighted fold means, counts summed
    std::vector<Metrics> per_fold;
};

// Mean logistic loss plus (lambda/2)*||w||^2 over pre-standardized rows.
double logistic_loss(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, std::span<const double> weights,
                     double intercept, double lambda);

// Analytic gradient of logistic_loss; grad has weights.size() entries and the
// intercept derivative is returned through intercept_grad.
void logistic_gradient(const std::vector<std::vector<double>>& rows,
                       const std::vector<int>& labels, std::span<const double> weights,
                       double intercept, double lambda, std::vector<double>& grad,
                       double& intercept_grad);

// Full-batch gradient descent with backtracking line search; deterministic
// given the data order. Weights start at zero unless warm_start is provided.
Model train(const Dataset& data, const TrainOptions& options = {},
            const std::vector<double>* warm_start = nullptr);

Metrics evaluate(const Model& model, const Dataset& data, double threshold = 0.5);

Metrics compute_metrics(std::span<const double> probabilities, std::span<const int> labels,
                        double threshold = 0.5);

// Seeded stratified k-fold cross-validation with per-fold standardization.
CvResult kfold(const Dataset& data, int folds, std::uint64_t seed,
               const TrainOptions& options = {});

// Indices of exactly size/2 rows per class, sampled without replacement.
std::vector<std::size_t> balanced_sample_indices(const std::vector<int>& labels,
                                                 std::size_t size, std::uint64_t seed);

Dataset balanced_sample(const Dataset& pool, std::size_t size, std::uint64_t seed);

// Predicts the modal label everywhere (ties resolve to positive).
Metrics baseline_majority(const std::vector<int>& labels);

// Predicts positive for a seeded uniform subset of the given rate.
Metrics baseline_random(const std::vector<int>& labels, double positive_rate,
                        std::uint64_t seed);

}  // namespace tagnet
