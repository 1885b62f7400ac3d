#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shiftlab/counterexamples.hpp"
#include "shiftlab/weight_spec.hpp"
#include "shiftlab/weights.hpp"

using namespace shiftlab;

TEST_CASE("constant weight two gives L(n) = n exactly") {
    LogProductTable t(parse_weight_spec("rolewicz(2)"), 10);
    CHECK(t.is_dyadic());
    for (std::int64_t n = 0; n <= 10; ++n) {
        CHECK(t.at(n) == static_cast<double>(n));
        CHECK(t.exact_at(n) == Rational(n));
    }
    CHECK(t.max_error() == 0.0);
}

TEST_CASE("log-root weight table matches the closed form at n = 99") {
    LogProductTable t(parse_weight_spec("menet(2)"), 99);
    CHECK_FALSE(t.is_exact());
    CHECK(t.at(99) == doctest::Approx(std::log2(100.0) / 4).epsilon(1e-14));
    CHECK(std::fabs(t.at(99) - menet_log_product(2, 99)) <= t.error_at(99) + 1e-15);
}

TEST_CASE("rational tables equal the direct exact product") {
    auto p = gen_prop2_weights(6);
    LogProductTable t(p.weights, 10000);
    Rational running(0);
    for (std::int64_t n = 1; n <= 10000; ++n) {
        running += p.weights.exact_log2_weight(n);
        REQUIRE(t.exact_at(n) == running);
        REQUIRE(t.at(n) == static_cast<double>(running.num()));
    }
}

TEST_CASE("table guards") {
    CHECK_THROWS_AS(LogProductTable(parse_weight_spec("rolewicz(2)"), kMaxHorizon + 1), ResourceError);
    CHECK_THROWS_AS(LogProductTable(parse_weight_spec("prop2(2)"), 12), std::invalid_argument);
    LogProductTable t(parse_weight_spec("rolewicz(2)"), 5);
    CHECK_THROWS_AS(t.at(6), std::out_of_range);
}

TEST_CASE("bilateral tables span [-N, N]") {
    LogProductTable t(parse_weight_spec("bilateral(0.5, 2)"), 4);
    CHECK(t.first_index() == -4);
    CHECK(t.last_index() == 4);
    CHECK(t.sum(-4, 0) == -4.0);
    CHECK(t.sum(0, 4) == 4.0);
    CHECK(t.is_dyadic());
}

TEST_CASE("weight spec DSL") {
    CHECK(parse_weight_spec("rolewicz(2)").spec() == "rolewicz(2)");
    CHECK(parse_weight_spec(" menet( 2 ) ").kind() == "menet");
    CHECK(parse_weight_spec("prop2(4)").max_index() == 393);
    CHECK(parse_weight_spec("example313(2)").max_index() == (1 << 14));
    CHECK_FALSE(parse_weight_spec("rolewicz(3)").is_exact());

    auto pos = [](const std::string& s) {
        try {
            parse_weight_spec(s);
        } catch (const SpecParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1L;
    };
    CHECK(pos("rolewicz(") == 9);
    CHECK(pos("menet(x)") == 6);
    CHECK(pos("unknown(1)") == 0);
    CHECK(pos("prop2(9)") == 6);
    CHECK(pos("rolewicz(2) x") == 12);
    CHECK(pos("rolewicz(-1)") == 9);
}

TEST_CASE("weight files") {
    std::istringstream uni("# log2 weights\n1\n-1/2\n1/4\n");
    auto w = read_weight_file(uni, "mem");
    CHECK(w.is_exact());
    CHECK(w.exact_log2_weight(2) == Rational(-1, 2));
    CHECK(w.max_index() == 3);

    std::istringstream bi("#side=bilateral\n-1\n0\n1\n");
    auto b = read_weight_file(bi, "bi");
    CHECK(b.side() == Side::bilateral);
    CHECK(b.exact_log2_weight(-1) == Rational(-1));

    std::istringstream zero("1\n-inf\n1\n");
    auto z = read_weight_file(zero, "z");
    LogProductTable t(z, 3);
    CHECK(t.has_zero(1, 2));
    CHECK_FALSE(t.has_zero(2, 3));
    CHECK(std::isinf(t.sum(0, 3)));

    std::istringstream bad("1\nabc\n");
    CHECK_THROWS_AS(read_weight_file(bad, "bad"), std::invalid_argument);

    const std::string path = "shiftlab_test_weights.txt";
    {
        std::ofstream f(path);
        f << "1\n1\n-2\n";
    }
    auto fw = parse_weight_spec("file(\"" + path + "\")");
    CHECK(LogProductTable(fw, 3).exact_at(3) == Rational(0));
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_weight_spec("file(/no/such/file)"), SpecParseError);
}

TEST_CASE("generators are deterministic") {
    LogProductTable a(parse_weight_spec("menet(1.5)"), 5000), b(parse_weight_spec("menet(1.5)"), 5000);
    for (std::int64_t n = 0; n <= 5000; ++n) REQUIRE(a.at(n) == b.at(n));
    CHECK(gen_prop2_weights(5).log2_weights == gen_prop2_weights(5).log2_weights);
}
