#include "test_helpers.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "mvlab/prices_io.hpp"

using namespace mvlab;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "mvlab_prices_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("two-row file round-trips") {
    TempFile file("date,close\n2020-01-02,100.0\n2020-01-03,101.5\n");
    const PricePath path = ingest_prices(file.path, 0.0);
    CHECK(path.prices.size() == 2);
    CHECK(path.price(0) == 100.0);
    CHECK(path.price(1) == 101.5);
    CHECK(path.grid.dt() == doctest::Approx(1.0 / 252.0));
}

TEST_CASE("discounting applies from the series start") {
    std::string contents = "date,close\n";
    for (int i = 0; i < 2520; ++i) {
        char date[16];
        // synthetic strictly increasing dates; calendar realism is not needed
        std::snprintf(date, sizeof(date), "%04d-%02d-%02d", 2000 + i / 144, 1 + (i / 12) % 12,
                      1 + i % 12);
        contents += std::string(date) + ",100\n";
    }
    TempFile file(contents);
    const PricePath path = ingest_prices(file.path, 0.02);
    CHECK(path.prices.size() == 2520);
    CHECK(path.price(0) == 100.0);
    const double want = 100.0 * std::exp(-0.02 * 2519.0 / 252.0);
    CHECK(path.prices.back() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("bad files are rejected with the offending line") {
    SUBCASE("negative close names its row") {
        TempFile file(
            "date,close\n"
            "2020-01-02,10\n2020-01-03,10\n2020-01-06,10\n2020-01-07,10\n2020-01-08,10\n"
            "2020-01-09,-3\n2020-01-10,10\n");
        try {
            ingest_prices(file.path, 0.02);
            FAIL("expected data_error");
        } catch (const data_error& e) {
            CHECK(e.index() == 7);  // 1-based file line
            CHECK(std::string(e.what()).find("row 7") != std::string::npos);
        }
    }
    SUBCASE("retrograde date") {
        TempFile file("date,close\n2020-01-02,10\n2020-01-01,10\n");
        CHECK_THROWS_AS(ingest_prices(file.path, 0.02), data_error);
    }
    SUBCASE("duplicate date") {
        TempFile file("date,close\n2020-01-02,10\n2020-01-02,10\n");
        CHECK_THROWS_AS(ingest_prices(file.path, 0.02), data_error);
    }
    SUBCASE("missing header") {
        TempFile file("2020-01-02,10\n2020-01-03,10\n");
        CHECK_THROWS_AS(ingest_prices(file.path, 0.02), data_error);
    }
    SUBCASE("malformed close") {
        TempFile file("date,close\n2020-01-02,10\n2020-01-03,ten\n");
        CHECK_THROWS_AS(ingest_prices(file.path, 0.02), data_error);
    }
    SUBCASE("non-date") {
        TempFile file("date,close\nJan 2 2020,10\n2020-01-03,10\n");
        CHECK_THROWS_AS(ingest_prices(file.path, 0.02), data_error);
    }
    SUBCASE("single row is too short") {
        TempFile file("date,close\n2020-01-02,10\n");
        CHECK_THROWS_AS(ingest_prices(file.path, 0.02), data_error);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(ingest_prices("no_such_file.csv", 0.02), data_error); }
}
