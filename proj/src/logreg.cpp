#include "tagnet/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tagnet/rng.hpp"

namespace tagnet {

namespace {

constexpr double kProbClamp = 1e-12;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_labels(const std::vector<int>& labels) {
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y != 0 && y != 1) throw ValidationError("labels must be 0 or 1");
        (y ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg)
        throw DegenerateLabels("training data contains a single class");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void Dataset::validate() const {
    if (rows.size() != labels.size())
        throw ValidationError("row/label count mismatch");
    for (const auto& row : rows) {
        if (row.size() != width()) throw ValidationError("ragged feature matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw ValidationError("non-finite feature value");
    }
}

void Standardizer::fit(const std::vector<std::vector<double>>& rows) {
    const std::size_t d = rows.empty() ? 0 : rows.front().size();
    mean.assign(d, 0.0);
    stdev.assign(d, 1.0);
    if (rows.empty()) return;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) mean[j] /= n;
    std::vector<double> var(d, 0.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < d; ++j) {
            const double c = row[j] - mean[j];
            var[j] += c * c;
        }
    for (std::size_t j = 0; j < d; ++j) {
        const double s = std::sqrt(var[j] / n);
        stdev[j] = (s > 0.0) ? s : 1.0;
    }
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
    if (row.size() != mean.size()) throw ValidationError("row width does not match standardizer");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / stdev[j];
    return out;
}

double logistic_loss(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, std::span<const double> weights,
                     double intercept, double lambda) {
    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double z = dot(rows[i], weights) + intercept;
        loss += softplus(z) - static_cast<double>(labels[i]) * z;
    }
    loss /= static_cast<double>(rows.size());
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * lambda * reg;
}

void logistic_gradient(const std::vector<std::vector<double>>& rows,
                       const std::vector<int>& labels, std::span<const double> weights,
                       double intercept, double lambda, std::vector<double>& grad,
                       double& intercept_grad) {
    grad.assign(weights.size(), 0.0);
    intercept_grad = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double z = dot(rows[i], weights) + intercept;
        const double residual = sigmoid(z) - static_cast<double>(labels[i]);
        const auto& row = rows[i];
        for (std::size_t j = 0; j < weights.size(); ++j) grad[j] += residual * row[j];
        intercept_grad += residual;
    }
    const double n = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < weights.size(); ++j) grad[j] = grad[j] / n + lambda * weights[j];
    intercept_grad /= n;
}

Model train(const Dataset& data, const TrainOptions& options,
            const std::vector<double>* warm_start) {
    data.validate();
    if (data.size() < 2) throw ValidationError("need at least 2 rows to train");
    check_labels(data.labels);

    Model model;
    model.feature_names = data.feature_names;
    model.lambda = options.lambda;
    model.scaler.fit(data.rows);

    std::vector<std::vector<double>> x;
    x.reserve(data.size());
    for (const auto& row : data.rows) x.push_back(model.scaler.apply(row));

    const std::size_t d = data.width();
    std::vector<double> w(d, 0.0);
    double b = 0.0;
    if (warm_start) {
        if (warm_start->size() != d + 1) throw ValidationError("warm start width mismatch");
        w.assign(warm_start->begin(), warm_start->begin() + d);
        b = warm_start->back();
    }

    std::vector<double> grad(d, 0.0);
    double grad_b = 0.0;
    double loss = logistic_loss(x, data.labels, w, b, options.lambda);
    double step = 1.0;
    int iter = 0;
    double grad_norm = 0.0;
    for (; iter < options.max_iter; ++iter) {
        logistic_gradient(x, data.labels, w, b, options.lambda, grad, grad_b);
        grad_norm = std::sqrt(dot(grad, grad) + grad_b * grad_b);
        if (grad_norm <= options.tol) break;

        // Backtracking line search (Armijo, c = 1e-4); the accepted step
        // seeds the next iteration doubled so step sizes adapt both ways.
        const double sq = grad_norm * grad_norm;
        double trial = std::min(step * 2.0, 1e6);
        std::vector<double> w_new(d);
        double b_new = 0.0, loss_new = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t j = 0; j < d; ++j) w_new[j] = w[j] - trial * grad[j];
            b_new = b - trial * grad_b;
            loss_new = logistic_loss(x, data.labels, w_new, b_new, options.lambda);
            if (loss_new <= loss - 1e-4 * trial * sq) {
                accepted = true;
                break;
            }
            trial *= 0.5;
        }
        if (!accepted) break;  // step underflow: gradient is numerically flat
        w.swap(w_new);
        b = b_new;
        loss = loss_new;
        step = trial;
    }

    model.weights = std::move(w);
    model.intercept = b;
    model.convergence.iterations = iter;
    model.convergence.grad_norm = grad_norm;
    model.convergence.converged = grad_norm <= options.tol;
    return model;
}

double Model::predict(std::span<const double> row) const {
    if (row.size() != weights.size())
        throw ValidationError("row width does not match model");
    const auto z = scaler.apply(row);
    const double p = sigmoid(dot(z, weights) + intercept);
    return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

Metrics Metrics::from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t tn,
                             std::uint64_t fn) {
    Metrics m;
    m.tp = tp;
    m.fp = fp;
    m.tn = tn;
    m.fn = fn;
    const std::uint64_t total = tp + fp + tn + fn;
    m.accuracy = total ? static_cast<double>(tp + tn) / static_cast<double>(total) : 0.0;
    m.precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = (m.precision + m.recall > 0.0)
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

Metrics compute_metrics(std::span<const double> probabilities, std::span<const int> labels,
                        double threshold) {
    if (probabilities.size() != labels.size())
        throw ValidationError("prediction/label length mismatch");
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool positive = probabilities[i] >= threshold;
        if (positive)
            (labels[i] ? tp : fp) += 1;
        else
            (labels[i] ? fn : tn) += 1;
    }
    return Metrics::from_counts(tp, fp, tn, fn);
}

Metrics evaluate(const Model& model, const Dataset& data, double threshold) {
    std::vector<double> probs;
    probs.reserve(data.size());
    for (const auto& row : data.rows) probs.push_back(model.predict(row));
    return compute_metrics(probs, data.labels, threshold);
}

CvResult kfold(const Dataset& data, int folds, std::uint64_t seed,
               const TrainOptions& options) {
    data.validate();
    if (folds < 2) throw ValidationError("k-fold needs k >= 2");
    check_labels(data.labels);

    std::vector<std::size_t> positives, negatives;
    for (std::size_t i = 0; i < data.size(); ++i)
        (data.labels[i] ? positives : negatives).push_back(i);
    if (positives.size() < static_cast<std::size_t>(folds) ||
        negatives.size() < static_cast<std::size_t>(folds))
        throw StratificationError("a class is smaller than the fold count");

    Rng rng(seed);
    rng.shuffle(positives);
    rng.shuffle(negatives);
    std::vector<int> fold_of(data.size());
    for (std::size_t i = 0; i < positives.size(); ++i)
        fold_of[positives[i]] = static_cast<int>(i % folds);
    for (std::size_t i = 0; i < negatives.size(); ++i)
        fold_of[negatives[i]] = static_cast<int>(i % folds);

    CvResult result;
    double acc = 0.0, prec = 0.0, rec = 0.0, f1 = 0.0;
    for (int f = 0; f < folds; ++f) {
        Dataset train_set, val_set;
        train_set.feature_names = data.feature_names;
        val_set.feature_names = data.feature_names;
        for (std::size_t i = 0; i < data.size(); ++i) {
            Dataset& dst = (fold_of[i] == f) ? val_set : train_set;
            dst.rows.push_back(data.rows[i]);
            dst.labels.push_back(data.labels[i]);
        }
        const Model model = train(train_set, options);
        const Metrics m = evaluate(model, val_set);
        result.per_fold.push_back(m);
        acc += m.accuracy;
        prec += m.precision;
        rec += m.recall;
        f1 += m.f1;
        result.mean.tp += m.tp;
        result.mean.fp += m.fp;
        result.mean.tn += m.tn;
        result.mean.fn += m.fn;
    }
    const double k = static_cast<double>(folds);
    result.mean.accuracy = acc / k;
    result.mean.precision = prec / k;
    result.mean.recall = rec / k;
    result.mean.f1 = f1 / k;
    return result;
}

std::vector<std::size_t> balanced_sample_indices(const std::vector<int>& labels,
                                                 std::size_t size, std::uint64_t seed) {
    if (size % 2 != 0) throw ValidationError("balanced sample size must be even");
    std::vector<std::size_t> positives, negatives;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] ? positives : negatives).push_back(i);
    const std::size_t half = size / 2;
    if (positives.size() < half)
        throw SamplingError("positive class too small: " + std::to_string(positives.size()) +
                            " < " + std::to_string(half));
    if (negatives.size() < half)
        throw SamplingError("negative class too small: " + std::to_string(negatives.size()) +
                            " < " + std::to_string(half));
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(size);
    for (std::size_t i : rng.sample_without_replacement(positives.size(), half))
        chosen.push_back(positives[i]);
    for (std::size_t i : rng.sample_without_replacement(negatives.size(), half))
        chosen.push_back(negatives[i]);
    return chosen;
}

Dataset balanced_sample(const Dataset& pool, std::size_t size, std::uint64_t seed) {
    pool.validate();
    Dataset out;
    out.feature_names = pool.feature_names;
    for (std::size_t i : balanced_sample_indices(pool.labels, size, seed)) {
        out.rows.push_back(pool.rows[i]);
        out.labels.push_back(pool.labels[i]);
    }
    return out;
}

Metrics baseline_majority(const std::vector<int>& labels) {
    if (labels.empty()) throw ValidationError("majority baseline needs labels");
    std::uint64_t pos = 0;
    for (int y : labels) pos += (y != 0);
    const std::uint64_t neg = labels.size() - pos;
    const int modal = (pos >= neg) ? 1 : 0;
    if (modal == 1) return Metrics::from_counts(pos, neg, 0, 0);
    return Metrics::from_counts(0, 0, neg, pos);
}

Metrics baseline_random(const std::vector<int>& labels, double positive_rate,
                        std::uint64_t seed) {
    if (labels.empty()) throw ValidationError("random baseline needs labels");
    if (positive_rate < 0.0 || positive_rate > 1.0)
        throw ValidationError("positive rate must be in [0,1]");
    const std::size_t n = labels.size();
    const auto take = static_cast<std::size_t>(std::llround(positive_rate * static_cast<double>(n)));
    Rng rng(seed);
    std::vector<char> predicted(n, 0);
    for (std::size_t i : rng.sample_without_replacement(n, take)) predicted[i] = 1;
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (predicted[i])
            (labels[i] ? tp : fp) += 1;
        else
            (labels[i] ? fn : tn) += 1;
    }
    return Metrics::from_counts(tp, fp, tn, fn);
}

void Model::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file: " + path.string());
    out << "tagnet-model v1\n";
    out << "lambda\t" << format_double(lambda) << "\n";
    out << "intercept\t" << format_double(intercept) << "\n";
    out << "iterations\t" << convergence.iterations << "\n";
    out << "grad_norm\t" << format_double(convergence.grad_norm) << "\n";
    out << "converged\t" << (convergence.converged ? 1 : 0) << "\n";
    out << "features\t" << feature_names.size() << "\n";
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
        out << feature_names[j] << "\t" << format_double(scaler.mean[j]) << "\t"
            << format_double(scaler.stdev[j]) << "\t" << format_double(weights[j]) << "\n";
    }
}

Model Model::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path.string());
    std::string line;
    auto next_line = [&]() -> std::string& {
        if (!std::getline(in, line)) throw Error("truncated model file: " + path.string());
        return line;
    };
    if (next_line() != "tagnet-model v1")
        throw Error("unrecognized model file: " + path.string());

    Model model;
    auto parse_field = [&](const char* key) -> std::string {
        next_line();
        std::istringstream ss(line);
        std::string k, v;
        std::getline(ss, k, '\t');
        std::getline(ss, v, '\t');
        if (k != key) throw Error("model file: expected field " + std::string(key));
        return v;
    };
    model.lambda = std::stod(parse_field("lambda"));
    model.intercept = std::stod(parse_field("intercept"));
    model.convergence.iterations = std::stoi(parse_field("iterations"));
    model.convergence.grad_norm = std::stod(parse_field("grad_norm"));
    model.convergence.converged = std::stoi(parse_field("converged")) != 0;
    const std::size_t d = std::stoul(parse_field("features"));
    for (std::size_t j = 0; j < d; ++j) {
        next_line();
        std::istringstream ss(line);
        std::string name, mean, stdev, weight;
        std::getline(ss, name, '\t');
        std::getline(ss, mean, '\t');
        std::getline(ss, stdev, '\t');
        std::getline(ss, weight, '\t');
        model.feature_names.push_back(name);
        model.scaler.mean.push_back(std::stod(mean));
        model.scaler.stdev.push_back(std::stod(stdev));
        model.weights.push_back(std::stod(weight));
    }
    return model;
}

}  // namespace tagnet
