#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "cigan/dataset.hpp"
#include "cigan/error.hpp"
#include "cigan/rng.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"

using namespace cigan;
using cigan::test::TempDir;

TEST_CASE("load_csv parses features and keeps labels") {
    TempDir dir("csv");
    test::spit(dir.file("t.csv"), "a,b,t\n1,2,x\n3,4,y\n");
    const Dataset d = load_csv(dir.file("t.csv"), "t");
    CHECK(d.size() == 2);
    CHECK(d.dim() == 2);
    CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
    CHECK(d.class_labels == std::vector<std::string>{"x", "y"});
    CHECK(d.features(0, 0) == 1.0);
    CHECK(d.features(1, 1) == 4.0);
    CHECK(d.target == std::vector<std::string>{"x", "y"});
}

TEST_CASE("load_csv accepts the target column anywhere") {
    TempDir dir("csv");
    test::spit(dir.file("t.csv"), "a,t,b\n1,x,2\n3,y,4\n");
    const Dataset d = load_csv(dir.file("t.csv"), "t");
    CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
    CHECK(d.features(1, 1) == 4.0);
}

TEST_CASE("load_csv error paths") {
    TempDir dir("csv");
    test::spit(dir.file("missing.csv"), "a,b\n1,2\n");
    CHECK_ERROR_KIND(load_csv(dir.file("missing.csv"), "t"), ErrorKind::MissingTargetColumn);

    test::spit(dir.file("bad.csv"), "a,t\nfoo,x\n");
    CHECK_ERROR_KIND(load_csv(dir.file("bad.csv"), "t"), ErrorKind::NonNumericFeatureCell);

    test::spit(dir.file("nan.csv"), "a,t\nnan,x\n");
    CHECK_ERROR_KIND(load_csv(dir.file("nan.csv"), "t"), ErrorKind::NonNumericFeatureCell);

    test::spit(dir.file("ragged.csv"), "a,b,t\n1,2,x\n1,2\n");
    CHECK_ERROR_KIND(load_csv(dir.file("ragged.csv"), "t"), ErrorKind::RaggedRow);

    test::spit(dir.file("empty.csv"), "a,b,t\n");
    CHECK_ERROR_KIND(load_csv(dir.file("empty.csv"), "t"), ErrorKind::EmptyDataset);

    CHECK_ERROR_KIND(load_csv(dir.file("nope.csv"), "t"), ErrorKind::IoError);
}

TEST_CASE("drug-consumption-shaped fixture round-trips with its class counts") {
    TempDir dir("csv");
    const Dataset d = test::make_dc_fixture();
    write_csv(d, dir.file("dc.csv"), "amphetamine");
    const Dataset loaded = load_csv(dir.file("dc.csv"), "amphetamine");
    CHECK(loaded.size() == 1885);
    CHECK(loaded.dim() == 12);
    const auto counts = class_counts(loaded);
    CHECK(counts.at("1") == 976);
    CHECK(counts.at("2") == 230);
    CHECK(counts.at("3") == 679);
}

TEST_CASE("class_counts sums to n") {
    const Dataset d = test::make_gaussian_dataset({{"c", 5, {0.0}, 0.1}}, 1, 3);
    const auto counts = class_counts(d);
    CHECK(counts.size() == 1);
    CHECK(counts.at("c") == 5);

    const Dataset single = test::make_gaussian_dataset({{"c", 1, {0.0}, 0.1}}, 1, 3);
    CHECK(class_counts(single).at("c") == 1);
}

TEST_CASE("make_dataset validates its invariants") {
    Matrix f(2, 2);
    CHECK_ERROR_KIND(make_dataset(f, {"a"}, {"x", "y"}), ErrorKind::LengthMismatch);
    CHECK_ERROR_KIND(make_dataset(f, {"a", "b"}, {"x"}), ErrorKind::LengthMismatch);
    CHECK_ERROR_KIND(make_dataset(f, {"a", "b"}, {"x", "x"}), ErrorKind::InvalidConfig);
    CHECK_ERROR_KIND(make_dataset(Matrix(0, 2), {}, {"x", "y"}), ErrorKind::EmptyDataset);
    Matrix bad(1, 1);
    bad(0, 0) = std::nan("");
    CHECK_ERROR_KIND(make_dataset(bad, {"a"}, {"x"}), ErrorKind::NonNumericFeatureCell);
}

// hand-enumerated largest-remainder allocations
TEST_CASE("allocate_partitions matches hand enumeration") {
    const std::vector<double> fractions{0.6, 0.2, 0.2};
    CHECK(allocate_partitions(10, fractions) == std::vector<std::size_t>{6, 2, 2});
    // 7: floors (4,1,1), remainders (.2,.4,.4) -> leftover goes to val on the tie
    CHECK(allocate_partitions(7, fractions) == std::vector<std::size_t>{4, 2, 1});
    // 3: largest remainder alone yields (2,1,0); the one-per-partition rule
    // moves one item from train to test
    CHECK(allocate_partitions(3, fractions) == std::vector<std::size_t>{1, 1, 1});
    CHECK(allocate_partitions(5, fractions) == std::vector<std::size_t>{3, 1, 1});
}

TEST_CASE("allocate_partitions properties over random inputs") {
    Rng rng(99);
    for (int it = 0; it < 200; ++it) {
        const std::size_t count = 3 + rng.below(200);
        double a = 0.05 + rng.uniform() * 0.8;
        double b = (1.0 - a) * (0.1 + 0.8 * rng.uniform());
        const std::vector<double> fractions{a, b, 1.0 - a - b};
        const auto alloc = allocate_partitions(count, fractions);
        std::size_t total = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            total += alloc[i];
            CHECK(alloc[i] >= 1);
        }
        CHECK(total == count);
    }
}

TEST_CASE("stratified_split splits each class by largest remainder") {
    const Dataset d = test::make_gaussian_dataset(
        {{"a", 10, {0.0}, 0.1}, {"b", 5, {1.0}, 0.1}}, 1, 17);
    const SplitResult parts = stratified_split(d, SplitSpec{0.6, 0.2, 0.2, 1});
    CHECK(class_counts(parts.train).at("a") == 6);
    CHECK(class_counts(parts.val).at("a") == 2);
    CHECK(class_counts(parts.test).at("a") == 2);
    CHECK(class_counts(parts.train).at("b") == 3);
    CHECK(class_counts(parts.val).at("b") == 1);
    CHECK(class_counts(parts.test).at("b") == 1);
}

TEST_CASE("stratified_split is a partition and deterministic") {
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        std::vector<test::ClassSpec> specs;
        const std::size_t k = 2 + rng.below(3);
        for (std::size_t c = 0; c < k; ++c) {
            specs.push_back({"c" + std::to_string(c), 3 + rng.below(40),
                             {static_cast<double>(c), 0.0}, 0.3});
        }
        const Dataset d = test::make_gaussian_dataset(specs, 2, 100 + it);
        SplitSpec spec{0.6, 0.2, 0.2, static_cast<std::uint64_t>(it)};
        const SplitResult parts = stratified_split(d, spec);

        // partition: multiset of rows is preserved
        CHECK(parts.train.size() + parts.val.size() + parts.test.size() == d.size());
        std::multiset<std::string> original, recombined;
        auto key = [](const Dataset& ds, std::size_t i) {
            std::string s = ds.target[i];
            for (std::size_t j = 0; j < ds.dim(); ++j) {
                s += "," + std::to_string(ds.features(i, j));
            }
            return s;
        };
        for (std::size_t i = 0; i < d.size(); ++i) original.insert(key(d, i));
        for (const Dataset* part : {&parts.train, &parts.val, &parts.test}) {
            for (std::size_t i = 0; i < part->size(); ++i) recombined.insert(key(*part, i));
        }
        CHECK(original == recombined);

        // per-class proportions deviate by at most one sample
        const auto totals = class_counts(d);
        const double fractions[3] = {0.6, 0.2, 0.2};
        const Dataset* split_parts[3] = {&parts.train, &parts.val, &parts.test};
        for (const auto& [label, count] : totals) {
            for (int p = 0; p < 3; ++p) {
                const auto counts = class_counts(*split_parts[p]);
                const auto it_label = counts.find(label);
                const double got =
                    it_label == counts.end() ? 0.0 : static_cast<double>(it_label->second);
                CHECK(std::abs(got - fractions[p] * static_cast<double>(count)) <= 1.0 + 1e-9);
            }
        }

        // determinism
        const SplitResult again = stratified_split(d, spec);
        CHECK(again.train.features == parts.train.features);
        CHECK(again.val.target == parts.val.target);
        CHECK(again.test.features == parts.test.features);
    }
}

TEST_CASE("stratified_split rejects classes below three samples") {
    const Dataset d =
        test::make_gaussian_dataset({{"a", 10, {0.0}, 0.1}, {"b", 2, {1.0}, 0.1}}, 1, 3);
    CHECK_ERROR_KIND(stratified_split(d, SplitSpec{}), ErrorKind::ClassTooSmall);
}

TEST_CASE("split spec validation") {
    CHECK_ERROR_KIND(stratified_split(test::make_dc_fixture(), SplitSpec{0.5, 0.2, 0.2, 1}),
                     ErrorKind::InvalidConfig);
}

TEST_CASE("scaler endpoints, midpoint and constant features") {
    Matrix f(3, 2);
    f(0, 0) = 0.0;
    f(1, 0) = 10.0;
    f(2, 0) = 5.0;
    f(0, 1) = 5.0;
    f(1, 1) = 5.0;
    f(2, 1) = 5.0;
    const Dataset d = make_dataset(f, {"a", "a", "a"}, {"u", "v"});
    const FeatureScaler scaler = fit_scaler(d);
    CHECK(scaler.mins == std::vector<double>{0.0, 5.0});
    CHECK(scaler.maxs == std::vector<double>{10.0, 5.0});
    CHECK(scaler.is_constant(1));
    CHECK_FALSE(scaler.is_constant(0));

    const Matrix scaled = scaler.transform(f);
    CHECK(scaled(0, 0) == -1.0);
    CHECK(scaled(1, 0) == 1.0);
    CHECK(scaled(2, 0) == 0.0);
    CHECK(scaled(0, 1) == 0.0); // constant maps to 0

    const Matrix back = scaler.inverse_transform(scaled);
    CHECK(back(0, 1) == 5.0); // constant inverts to the constant
    CHECK(back(1, 0) == 10.0);

    // out-of-range values map outside [-1, 1]
    Matrix probe(1, 2);
    probe(0, 0) = 20.0;
    probe(0, 1) = 5.0;
    CHECK(scaler.transform(probe)(0, 0) > 1.0);

    CHECK_ERROR_KIND(scaler.transform(Matrix(1, 3)), ErrorKind::DimensionMismatch);
}

TEST_CASE("scaler round-trip stays below 1e-9 on random matrices") {
    Rng rng(1234);
    for (int it = 0; it < 50; ++it) {
        const std::size_t n = 2 + rng.below(30);
        const std::size_t d = 1 + rng.below(6);
        Matrix f(n, d);
        for (double& v : f.flat()) v = (rng.uniform() - 0.5) * 200.0;
        std::vector<std::string> target(n, "c");
        std::vector<std::string> names;
        for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
        const Dataset ds = make_dataset(f, target, names);
        const FeatureScaler scaler = fit_scaler(ds);
        const Matrix round = scaler.inverse_transform(scaler.transform(f));
        for (std::size_t i = 0; i < f.flat().size(); ++i) {
            CHECK(std::abs(round.flat()[i] - f.flat()[i]) < 1e-9);
        }
    }
}

TEST_CASE("csv write/load round-trip reproduces the dataset and the bytes") {
    TempDir dir("roundtrip");
    Rng rng(7);
    Matrix f(20, 3);
    for (double& v : f.flat()) v = (rng.uniform() - 0.5) * 7.0; // irrational-ish reals
    std::vector<std::string> target;
    for (std::size_t i = 0; i < 20; ++i) target.push_back(i % 2 ? "pos" : "neg");
    const Dataset d = make_dataset(f, target, {"a", "b", "c"});

    write_csv(d, dir.file("one.csv"), "label");
    const Dataset loaded = load_csv(dir.file("one.csv"), "label");
    CHECK(loaded.features == d.features);
    CHECK(loaded.target == d.target);
    CHECK(loaded.feature_names == d.feature_names);
    CHECK(loaded.class_labels == d.class_labels);

    write_csv(loaded, dir.file("two.csv"), "label");
    CHECK(test::slurp(dir.file("one.csv")) == test::slurp(dir.file("two.csv")));
}
