#include "support.hpp"

#include "topk/errors.hpp"
#include "topk/preflib.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace topk;
using namespace testing_support;

namespace {

const char* const kToy = "3\n1,A\n2,B\n3,C\n4,4,2\n3,1,2,3\n1,2,1\n";

std::size_t parse_error_line(const std::string& text) {
    try {
        parse_preflib(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("no parse error for: " << text);
    return 0;
}

}  // namespace

TEST_CASE("classic layout") {
    const auto ds = parse_preflib(kToy);
    CHECK(ds.m == 3);
    CHECK(ds.n == 4);
    CHECK(ds.candidate_names == std::vector<std::string>{"A", "B", "C"});
    REQUIRE(ds.ballots.size() == 2);
    CHECK(ds.ballots[0] == DatasetBallot{{0, 1, 2}, 3});
    CHECK(ds.ballots[1] == DatasetBallot{{1, 0}, 1});
    CHECK(ds.is_complete());
    CHECK_NOTHROW(ds.validate());
}

TEST_CASE("malformed input reports the line") {
    CHECK(parse_error_line("3\n1,A\n2,B\n3,C\n5,5,2\n3,1,2,3\n1,2,1\n") == 5);
    CHECK(parse_error_line("3\n1,A\n2,B\n3,C\n4,4,2\n3,1,{2,3}\n1,2,1\n") == 6);
    CHECK(parse_error_line("3\n1,A\n2,B\n3,C\n4,4,2\n3,1,2,2\n1,2,1\n") == 6);
    CHECK(parse_error_line("3\n1,A\n2,B\n3,C\n4,4,2\n3,1,2,4\n1,2,1\n") == 6);
    CHECK(parse_error_line("3\n1,A\n2,B\n3,C\n4,4,2\nx,1,2,3\n1,2,1\n") == 6);
    CHECK_THROWS_AS(parse_preflib(""), ParseError);
    CHECK_THROWS_AS(load_preflib("/nonexistent/file.soc"), ParseError);
}

TEST_CASE("current layout") {
    const std::string text =
        "# FILE NAME: toy.soi\n"
        "# DATA TYPE: soi\n"
        "# NUMBER ALTERNATIVES: 4\n"
        "# NUMBER VOTERS: 6\n"
        "# NUMBER UNIQUE ORDERS: 2\n"
        "# ALTERNATIVE NAME 1: Ann\n"
        "# ALTERNATIVE NAME 2: Bo\n"
        "# ALTERNATIVE NAME 3: Cy\n"
        "# ALTERNATIVE NAME 4: Di\n"
        "4: 4,2\n"
        "2: 1,2,3,4\n";
    const auto ds = parse_preflib(text);
    CHECK(ds.m == 4);
    CHECK(ds.n == 6);
    CHECK(ds.candidate_names[3] == "Di");
    CHECK(ds.ballots[0] == DatasetBallot{{3, 1}, 4});
    CHECK_FALSE(ds.is_complete());
    CHECK_THROWS_AS(parse_preflib("# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 3\n1: 1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_preflib("# NUMBER ALTERNATIVES: 3\n1: 1,{2,3}\n"), ParseError);
}

TEST_CASE("serialize round trip") {
    const auto ds = parse_preflib(kToy);
    CHECK(parse_preflib(serialize_classic(ds)) == ds);
    const auto ex = dataset_from_profile(example1(), {"a", "b", "c", "d"});
    CHECK(parse_preflib(serialize_classic(ex)) == ex);
    CHECK(dataset_to_profile(ex).same_multiset(example1()));

    const auto t = dataset_from_topk(truncate(example1(), 2));
    CHECK(parse_preflib(serialize_classic(t)) == t);
    CHECK(t.candidate_names[0] == "x1");
    CHECK_THROWS_AS(dataset_to_profile(t), DomainError);
}

TEST_CASE("fixture file") {
    const auto ds = load_preflib(TOPK_TEST_DATA "/example1.soc");
    CHECK(dataset_to_profile(ds).same_multiset(example1()));
    CHECK(ds.candidate_names == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("effective truncation") {
    ElectionDataset ds;
    ds.m = 4;
    ds.candidate_names = {"a", "b", "c", "d"};
    ds.ballots = {{{0, 1}, 2}, {{3, 2, 1, 0}, 1}};
    ds.n = 3;
    const auto t3 = effective_truncate(ds, 3);
    CHECK(t3.k() == 3);
    bool saw_short = false;
    for (const auto& e : t3.entries()) {
        if (e.ballot.length() == 2) {
            saw_short = true;
            CHECK(e.ballot.nominal_k() == 3);
        }
    }
    CHECK(saw_short);
    const auto t2 = effective_truncate(ds, 2);
    for (const auto& e : t2.entries()) {
        CHECK(e.ballot.length() == 2);
    }
    CHECK_THROWS_AS(effective_truncate(ds, 4), DomainError);
}

TEST_CASE("resampling") {
    ElectionDataset ds;
    ds.m = 2;
    ds.candidate_names = {"p", "q"};
    ds.ballots = {{{0}, 30}, {{1}, 70}};
    ds.n = 100;
    Rng rng(17);

    SUBCASE("hypergeometric mean") {
        double total = 0.0;
        const int draws = 10000;
        for (int i = 0; i < draws; ++i) {
            const auto s = resample(ds, 10, rng);
            CHECK(s.n == 10);
            for (const auto& b : s.ballots) {
                if (b.order == std::vector<CandidateId>{0}) {
                    total += static_cast<double>(b.count);
                }
            }
        }
        CHECK(total / draws == doctest::Approx(3.0).epsilon(0.05 / 3.0));
    }
    SUBCASE("whole dataset and single voter") {
        const auto full = resample(ds, 100, rng);
        CHECK(full.ballots == ds.ballots);
        const auto one = resample(ds, 1, rng);
        REQUIRE(one.ballots.size() == 1);
        CHECK(one.ballots[0].count == 1);
    }
    SUBCASE("with replacement") {
        const auto s = resample(ds, 250, rng, SamplingMode::with_replacement);
        CHECK(s.n == 250);
    }
    CHECK_THROWS_AS(resample(ds, 101, rng), DomainError);
    CHECK_THROWS_AS(resample(ds, 0, rng), DomainError);
}

TEST_CASE("real election file" * doctest::skip(std::getenv("TOPK_DUBLIN_FILE") == nullptr)) {
    const auto ds = load_preflib(std::getenv("TOPK_DUBLIN_FILE"));
    CHECK(ds.m == 12);
    CHECK(ds.n == 3662);
}
