#include "tagnet/logreg.hpp"

#include <cmath>

#include "doctest.h"
#include "tagnet/rng.hpp"
#include "test_util.hpp"

using namespace tagnet;

namespace {

Dataset random_dataset(Rng& rng, std::size_t rows, std::size_t cols) {
    Dataset d;
    for (std::size_t j = 0; j < cols; ++j) d.feature_names.push_back("f" + std::to_string(j));
    bool has0 = false, has1 = false;
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> row(cols);
        for (auto& v : row) v = rng.uniform(-2.0, 2.0);
        d.rows.push_back(std::move(row));
        int y = rng.bernoulli(0.5) ? 1 : 0;
        if (i == rows - 2 && !has1) y = 1;
        if (i == rows - 1 && !has0) y = 0;
        (y ? has1 : has0) = true;
        d.labels.push_back(y);
    }
    return d;
}

// Two Gaussian-ish blobs with a wide margin.
Dataset separable_blobs(Rng& rng, std::size_t per_class) {
    Dataset d;
    d.feature_names = {"x", "y"};
    for (std::size_t i = 0; i < per_class; ++i) {
        d.rows.push_back({-5.0 + rng.uniform(-0.5, 0.5), -5.0 + rng.uniform(-0.5, 0.5)});
        d.labels.push_back(0);
        d.rows.push_back({5.0 + rng.uniform(-0.5, 0.5), 5.0 + rng.uniform(-0.5, 0.5)});
        d.labels.push_back(1);
    }
    return d;
}

double relative_gradient_error(const std::vector<std::vector<double>>& x,
                               const std::vector<int>& y, std::vector<double> w, double b,
                               double lambda) {
    std::vector<double> analytic;
    double analytic_b = 0.0;
    logistic_gradient(x, y, w, b, lambda, analytic, analytic_b);

    const double h = 1e-6;
    double worst = 0.0;
    auto update = [&](double numeric, double exact) {
        const double scale = std::max({1.0, std::abs(numeric), std::abs(exact)});
        worst = std::max(worst, std::abs(numeric - exact) / scale);
    };
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double save = w[j];
        w[j] = save + h;
        const double up = logistic_loss(x, y, w, b, lambda);
        w[j] = save - h;
        const double down = logistic_loss(x, y, w, b, lambda);
        w[j] = save;
        update((up - down) / (2 * h), analytic[j]);
    }
    const double up = logistic_loss(x, y, w, b + h, lambda);
    const double down = logistic_loss(x, y, w, b - h, lambda);
    update((up - down) / (2 * h), analytic_b);
    return worst;
}

}  // namespace

TEST_CASE("analytic gradient matches central finite differences") {
    Rng rng(5);
    for (int round = 0; round < 25; ++round) {
        const std::size_t rows = 5 + rng.below(46);
        const std::size_t cols = 1 + rng.below(20);
        auto d = random_dataset(rng, rows, cols);
        std::vector<double> w(cols);
        for (auto& v : w) v = rng.uniform(-1.5, 1.5);
        const double b = rng.uniform(-1.0, 1.0);
        const double lambda = rng.uniform(0.0, 0.5);
        CHECK(relative_gradient_error(d.rows, d.labels, w, b, lambda) <= 1e-6);
    }
}

TEST_CASE("train on symmetric 1-D data gives probability 0.5 at the origin") {
    Dataset d;
    d.feature_names = {"x"};
    d.rows = {{-1.0}, {1.0}};
    d.labels = {0, 1};
    TrainOptions opt;
    opt.lambda = 0.1;
    auto model = train(d, opt);
    std::vector<double> origin = {0.0};
    CHECK(model.predict(origin) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(model.convergence.converged);
}

TEST_CASE("single-class data raises DegenerateLabels") {
    Dataset d;
    d.feature_names = {"x"};
    d.rows = {{0.0}, {1.0}};
    d.labels = {1, 1};
    CHECK_THROWS_AS(train(d), DegenerateLabels);
}

TEST_CASE("non-finite features are rejected") {
    Dataset d;
    d.feature_names = {"x"};
    d.rows = {{0.0}, {std::numeric_limits<double>::infinity()}};
    d.labels = {0, 1};
    CHECK_THROWS_AS(train(d), ValidationError);
}

TEST_CASE("predict") {
    Dataset d;
    d.feature_names = {"a", "b"};
    d.rows = {{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}};
    d.labels = {0, 1, 1, 0};
    auto model = train(d);

    SUBCASE("zero weights give 0.5 everywhere") {
        Model flat = model;
        flat.weights = {0.0, 0.0};
        flat.intercept = 0.0;
        std::vector<double> row = {0.3, -2.0};
        CHECK(flat.predict(row) == doctest::Approx(0.5));
    }

    SUBCASE("probabilities are clamped away from 0 and 1") {
        Model hot = model;
        hot.weights = {1e6, 0.0};
        hot.intercept = 0.0;
        std::vector<double> high = {1e6, 0.0}, low = {-1e6, 0.0};
        CHECK(hot.predict(high) <= 1.0 - 1e-12);
        CHECK(hot.predict(low) >= 1e-12);
    }

    SUBCASE("width mismatch raises") {
        std::vector<double> bad = {1.0};
        CHECK_THROWS_AS(model.predict(bad), ValidationError);
    }

    SUBCASE("monotone in a positively weighted feature") {
        Rng rng(3);
        for (int round = 0; round < 20; ++round) {
            Model m = model;
            m.weights = {rng.uniform(0.1, 2.0), rng.uniform(-2.0, 2.0)};
            m.intercept = rng.uniform(-1.0, 1.0);
            double x = rng.uniform(-3.0, 3.0);
            std::vector<double> lo = {x, 0.5}, hi = {x + rng.uniform(0.1, 2.0), 0.5};
            CHECK(m.predict(hi) >= m.predict(lo));
        }
    }
}

TEST_CASE("two optimizer starts reach the same loss (convexity)") {
    Rng rng(11);
    auto d = random_dataset(rng, 40, 6);
    TrainOptions opt;
    auto from_zero = train(d, opt);

    std::vector<double> warm(d.width() + 1);
    for (auto& v : warm) v = rng.uniform(-0.5, 0.5);
    auto from_random = train(d, opt, &warm);

    // compare achieved objective on the standardized problem
    auto objective = [&](const Model& m) {
        std::vector<std::vector<double>> x;
        for (const auto& row : d.rows) x.push_back(m.scaler.apply(row));
        return logistic_loss(x, d.labels, m.weights, m.intercept, opt.lambda);
    };
    CHECK(objective(from_zero) == doctest::Approx(objective(from_random)).epsilon(1e-6));
}

TEST_CASE("kfold") {
    SUBCASE("separable blobs reach accuracy 1.0") {
        Rng rng(19);
        auto d = separable_blobs(rng, 100);
        auto cv = kfold(d, 10, 42);
        CHECK(cv.mean.accuracy == doctest::Approx(1.0));
        CHECK(cv.per_fold.size() == 10);
    }

    SUBCASE("random labels stay near chance") {
        Rng rng(29);
        auto d = random_dataset(rng, 2000, 4);
        // force balance: alternate labels
        for (std::size_t i = 0; i < d.labels.size(); ++i) d.labels[i] = static_cast<int>(i % 2);
        auto cv = kfold(d, 10, 7);
        CHECK(cv.mean.accuracy >= 0.45);
        CHECK(cv.mean.accuracy <= 0.55);
    }

    SUBCASE("identical seed reproduces identical metrics") {
        Rng rng(31);
        auto d = random_dataset(rng, 120, 5);
        auto a = kfold(d, 5, 99);
        auto b = kfold(d, 5, 99);
        CHECK(a.mean.accuracy == b.mean.accuracy);
        CHECK(a.mean.tp == b.mean.tp);
        for (std::size_t f = 0; f < a.per_fold.size(); ++f)
            CHECK(a.per_fold[f].accuracy == b.per_fold[f].accuracy);
    }

    SUBCASE("class smaller than fold count raises StratificationError") {
        Dataset d;
        d.feature_names = {"x"};
        for (int i = 0; i < 20; ++i) {
            d.rows.push_back({static_cast<double>(i)});
            d.labels.push_back(i < 3 ? 1 : 0);
        }
        CHECK_THROWS_AS(kfold(d, 5, 1), StratificationError);
    }

    SUBCASE("standardization is fit on training folds only") {
        Rng rng(37);
        auto d = separable_blobs(rng, 50);
        // Scaling rows the trainer never sees must leave its standardizer
        // untouched; folds reuse train(), so this pins leak-freedom.
        Dataset train_half;
        train_half.feature_names = d.feature_names;
        for (std::size_t i = 0; i < d.size() / 2; ++i) {
            train_half.rows.push_back(d.rows[i]);
            train_half.labels.push_back(d.labels[i]);
        }
        auto m1 = train(train_half);
        Dataset scaled = d;
        for (std::size_t i = d.size() / 2; i < d.size(); ++i)
            for (auto& v : scaled.rows[i]) v *= 1000.0;
        Dataset train_half2;
        train_half2.feature_names = d.feature_names;
        for (std::size_t i = 0; i < d.size() / 2; ++i) {
            train_half2.rows.push_back(scaled.rows[i]);
            train_half2.labels.push_back(scaled.labels[i]);
        }
        auto m2 = train(train_half2);
        for (std::size_t j = 0; j < m1.scaler.mean.size(); ++j) {
            CHECK(m1.scaler.mean[j] == m2.scaler.mean[j]);
            CHECK(m1.scaler.stdev[j] == m2.scaler.stdev[j]);
        }
    }
}

TEST_CASE("balanced_sample") {
    SUBCASE("even pool gives an even split") {
        std::vector<int> labels;
        for (int i = 0; i < 200; ++i) labels.push_back(i < 100 ? 1 : 0);
        auto idx = balanced_sample_indices(labels, 100, 5);
        REQUIRE(idx.size() == 100);
        std::size_t pos = 0;
        for (auto i : idx) pos += labels[i];
        CHECK(pos == 50);
    }

    SUBCASE("deficient class raises SamplingError") {
        std::vector<int> labels;
        for (int i = 0; i < 130; ++i) labels.push_back(i < 30 ? 1 : 0);
        CHECK_THROWS_AS(balanced_sample_indices(labels, 100, 5), SamplingError);
    }

    SUBCASE("same seed reproduces the same sample") {
        std::vector<int> labels;
        for (int i = 0; i < 500; ++i) labels.push_back(i % 3 == 0 ? 1 : 0);
        CHECK(balanced_sample_indices(labels, 200, 77) ==
              balanced_sample_indices(labels, 200, 77));
        CHECK(balanced_sample_indices(labels, 200, 77) !=
              balanced_sample_indices(labels, 200, 78));
    }

    SUBCASE("dataset wrapper keeps rows aligned with labels") {
        Dataset pool;
        pool.feature_names = {"v"};
        for (int i = 0; i < 60; ++i) {
            pool.rows.push_back({static_cast<double>(i)});
            pool.labels.push_back(i % 2);
        }
        auto sample = balanced_sample(pool, 30, 9);
        REQUIRE(sample.size() == 30);
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const int original = static_cast<int>(sample.rows[i][0]);
            CHECK(sample.labels[i] == original % 2);
        }
    }
}

TEST_CASE("baselines") {
    SUBCASE("majority on 60% positive labels") {
        std::vector<int> labels;
        for (int i = 0; i < 100; ++i) labels.push_back(i < 60 ? 1 : 0);
        auto m = baseline_majority(labels);
        CHECK(m.accuracy == doctest::Approx(0.6));
        CHECK(m.recall == doctest::Approx(1.0));
        CHECK(m.precision == doctest::Approx(0.6));
    }

    SUBCASE("majority on balanced labels is 0.5") {
        std::vector<int> labels;
        for (int i = 0; i < 100; ++i) labels.push_back(i % 2);
        CHECK(baseline_majority(labels).accuracy == doctest::Approx(0.5));
    }

    SUBCASE("random baseline precision approaches the label rate") {
        std::vector<int> labels;
        Rng rng(43);
        for (int i = 0; i < 20000; ++i) labels.push_back(rng.bernoulli(0.3) ? 1 : 0);
        auto m = baseline_random(labels, 0.5, 11);
        CHECK(m.precision == doctest::Approx(0.3).epsilon(0.1));
        // the predicted-positive count is exactly rate * n
        CHECK(m.tp + m.fp == 10000);
    }
}

TEST_CASE("metrics") {
    SUBCASE("hand-computed confusion matrix") {
        std::vector<double> preds = {0.9, 0.9, 0.1, 0.1};
        std::vector<int> labels = {1, 0, 0, 1};
        auto m = compute_metrics(preds, labels);
        CHECK(m.accuracy == doctest::Approx(0.5));
        CHECK(m.precision == doctest::Approx(0.5));
        CHECK(m.recall == doctest::Approx(0.5));
        CHECK(m.f1 == doctest::Approx(0.5));
    }

    SUBCASE("perfect predictions") {
        std::vector<double> preds = {0.9, 0.1, 0.8};
        std::vector<int> labels = {1, 0, 1};
        auto m = compute_metrics(preds, labels);
        CHECK(m.accuracy == 1.0);
        CHECK(m.precision == 1.0);
        CHECK(m.recall == 1.0);
        CHECK(m.f1 == 1.0);
    }

    SUBCASE("all-negative predictions on mixed labels") {
        std::vector<double> preds = {0.1, 0.2, 0.3};
        std::vector<int> labels = {1, 0, 1};
        auto m = compute_metrics(preds, labels);
        CHECK(m.recall == 0.0);
        CHECK(m.f1 == 0.0);
    }

    SUBCASE("length mismatch raises") {
        std::vector<double> preds = {0.1};
        std::vector<int> labels = {1, 0};
        CHECK_THROWS_AS(compute_metrics(preds, labels), ValidationError);
    }

    SUBCASE("identities from raw counts") {
        Rng rng(53);
        for (int round = 0; round < 30; ++round) {
            std::vector<double> preds;
            std::vector<int> labels;
            for (int i = 0; i < 200; ++i) {
                preds.push_back(rng.uniform01());
                labels.push_back(rng.bernoulli(0.4) ? 1 : 0);
            }
            auto m = compute_metrics(preds, labels);
            const auto total = m.tp + m.fp + m.tn + m.fn;
            CHECK(total == 200);
            CHECK(m.accuracy ==
                  doctest::Approx(static_cast<double>(m.tp + m.tn) / total).epsilon(1e-15));
            if (m.tp + m.fp > 0)
                CHECK(m.precision ==
                      doctest::Approx(static_cast<double>(m.tp) / (m.tp + m.fp)).epsilon(1e-15));
            if (m.precision + m.recall > 0)
                CHECK(m.f1 == doctest::Approx(2 * m.precision * m.recall /
                                              (m.precision + m.recall))
                                  .epsilon(1e-15));
        }
    }
}

TEST_CASE("model save/load round-trip") {
    Rng rng(61);
    auto d = random_dataset(rng, 50, 4);
    auto model = train(d);
    testutil::TempDir tmp("model");
    model.save(tmp.file("m.txt"));
    auto loaded = Model::load(tmp.file("m.txt"));
    CHECK(loaded.feature_names == model.feature_names);
    CHECK(loaded.intercept == model.intercept);
    CHECK(loaded.lambda == model.lambda);
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        CHECK(loaded.weights[j] == model.weights[j]);
        CHECK(loaded.scaler.mean[j] == model.scaler.mean[j]);
        CHECK(loaded.scaler.stdev[j] == model.scaler.stdev[j]);
    }
    std::vector<double> row = {0.1, -0.2, 0.3, 0.4};
    CHECK(loaded.predict(row) == model.predict(row));
}
