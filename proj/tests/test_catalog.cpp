#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "gpbench/catalog.hpp"
#include "gpbench/textio.hpp"

using namespace gpbench;

TEST_CASE("builtin catalog shape") {
    const Catalog& cat = builtin_catalog();
    CHECK(cat.defs.size() == 57);

    std::set<std::string> excluded;
    for (const BenchmarkDef& def : cat.defs)
        if (def.excluded)
            excluded.insert(def.name);
    const std::set<std::string> expected = {"Korns-2", "Korns-3", "Korns-5", "Korns-6",
                                            "Korns-8", "Korns-9", "Korns-10"};
    CHECK(excluded == expected);
    CHECK(cat.match("").size() == 50);
    CHECK(cat.match("", true).size() == 57);
}

TEST_CASE("every formula respects its arity") {
    for (const BenchmarkDef& def : builtin_catalog().defs) {
        CHECK(def.objective.max_var_index() <= def.arity);
        CHECK(def.train_specs.size() == static_cast<std::size_t>(def.arity));
    }
}

TEST_CASE("catalog file and builtin catalog agree") {
    const Catalog fromFile = load_catalog(std::string(GPBENCH_DATA_DIR) + "/benchmarks.manifest");
    CHECK(fromFile.defs.size() == builtin_catalog().defs.size());
}

TEST_CASE("manifest grammar") {
    const char* text = R"(
# comment
benchmark Toy
  vars 2
  formula x1+x2
  train U[0,1,10]
  test none
end

benchmark Toy2
  vars 1
  formula ln(x1)
  train En[1,3,5]
  test E[1,3,0.5]
  excluded just testing
end
)";
    const Catalog cat = parse_catalog(text);
    REQUIRE(cat.defs.size() == 2);
    CHECK(cat.defs[0].arity == 2);
    CHECK(cat.defs[0].train_specs.size() == 2);  // single spec broadcast
    CHECK_FALSE(cat.defs[0].test_specs.has_value());
    CHECK(cat.defs[1].excluded);
    CHECK(cat.defs[1].exclusion_reason == "just testing");
    REQUIRE(cat.defs[1].test_specs.has_value());
    CHECK(grid_point_count(cat.defs[1].train_specs[0]) == 5);

    CHECK_THROWS_AS(parse_catalog("benchmark X\n vars 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_catalog("vars 2\n"), ConfigError);
    CHECK_THROWS_AS(
        parse_catalog("benchmark X\n vars 1\n formula x2\n train U[0,1,5]\n test none\nend\n"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_catalog("benchmark X\n vars 1\n formula x1\n train U[0,1,5]\nend\n"),
        ConfigError);
    CHECK_THROWS_AS(parse_catalog("benchmark X\n vars 2\n formula x1\n"
                                  " train U[0,1,5] U[0,1,5] U[0,1,5]\n test none\nend\n"),
                    ConfigError);
}

TEST_CASE("generation refuses excluded benchmarks unless forced") {
    const BenchmarkDef* korns9 = builtin_catalog().find("Korns-9");
    REQUIRE(korns9 != nullptr);
    CHECK_THROWS_WITH_AS(generate_benchmark(*korns9, 1),
                         doctest::Contains("log and sqrt"), DataError);
    GenerateOptions options;
    options.allow_excluded = true;
    const GeneratedPair pair = generate_benchmark(*korns9, 1, options);
    CHECK(pair.train.n() == 10000);
    CHECK(pair.train_resampled_rows > 0);  // rejection resampling had to repair rows
    for (double v : pair.train.y)
        CHECK(std::isfinite(v));
}

TEST_CASE("Korns-1 generates 10000 rows with an affine target") {
    const BenchmarkDef* def = builtin_catalog().find("Korns-1");
    const GeneratedPair pair = generate_benchmark(*def, 99);
    CHECK(pair.train.n() == 10000);
    CHECK(pair.train.d() == 5);
    for (std::size_t r = 0; r < 200; ++r) {
        const double x4 = pair.train.x.at(r, 3);
        CHECK(pair.train.x.at(r, 0) >= -50.0);
        CHECK(pair.train.x.at(r, 0) <= 50.0);
        CHECK(pair.train.y[r] == doctest::Approx(1.57 + 24.3 * x4).epsilon(1e-12));
    }
}

TEST_CASE("Nguyen-8 stays inside its domain") {
    const BenchmarkDef* def = builtin_catalog().find("Nguyen-8");
    const GeneratedPair pair = generate_benchmark(*def, 5);
    CHECK(pair.train.n() == 20);
    CHECK(pair.test_from_train_spec);
    for (std::size_t r = 0; r < pair.train.n(); ++r) {
        CHECK(pair.train.x.at(r, 0) >= 0.0);
        CHECK(pair.train.x.at(r, 0) <= 4.0);
        CHECK(pair.train.y[r] >= 0.0);
    }
}

TEST_CASE("generation is bitwise deterministic per seed") {
    const BenchmarkDef* def = builtin_catalog().find("Keijzer-11");
    const GeneratedPair a = generate_benchmark(*def, 4242);
    const GeneratedPair b = generate_benchmark(*def, 4242);
    const GeneratedPair c = generate_benchmark(*def, 4243);
    CHECK(a.train.x.data == b.train.x.data);
    CHECK(a.train.y == b.train.y);
    CHECK(a.test.x.data == b.test.x.data);
    CHECK(a.train.x.data != c.train.x.data);
}

TEST_CASE("missing test sets are redrawn from the training spec") {
    const BenchmarkDef* def = builtin_catalog().find("Nguyen-1");
    const GeneratedPair pair = generate_benchmark(*def, 7);
    CHECK(pair.test_from_train_spec);
    CHECK(pair.test.n() == pair.train.n());
    CHECK(pair.test.x.data != pair.train.x.data);  // independent stream (seed ^ 1)
}

TEST_CASE("whole catalog evaluates finite on both splits") {
    GenerateOptions options;
    options.grid_row_cap = 20000;  // keep this suite quick; acceptance covers full sizes
    for (const BenchmarkDef* def : builtin_catalog().match("")) {
        const GeneratedPair pair = generate_benchmark(*def, fnv1a(def->name));
        for (double v : pair.train.y)
            CHECK(std::isfinite(v));
        for (double v : pair.test.y)
            CHECK(std::isfinite(v));
    }
}

TEST_CASE("grid thinning keeps full counts available") {
    const BenchmarkDef* def = builtin_catalog().find("Keijzer-11");
    GenerateOptions options;
    options.grid_row_cap = 5000;
    const GeneratedPair pair = generate_benchmark(*def, 11, options);
    CHECK(pair.test.n() == 5000);
    CHECK(pair.test_full_rows == 361201);
    GenerateOptions full;
    CHECK(generate_benchmark(*def, 11, full).test.n() == 361201);
}

TEST_CASE("dataset CSV round-trips bitwise") {
    const BenchmarkDef* def = builtin_catalog().find("Vladislavleva-1");
    const GeneratedPair pair = generate_benchmark(*def, 3);
    const std::string path = "/tmp/gpbench_test_roundtrip.csv";
    write_dataset_csv(pair.train, path);

    LoadOptions options;
    options.target = "y";
    options.provenance = Provenance::Synthetic;
    const Dataset back = load_csv(path, options);
    CHECK(back.x.data == pair.train.x.data);
    CHECK(back.y == pair.train.y);
}
