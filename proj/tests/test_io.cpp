#include <gtest/gtest.h>

#include <cstdio>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "schurchan/errors.hpp"
#include "schurchan/io.hpp"

using namespace schurchan;

namespace {

template <typename T>
T round_trip(const T& x) {
    return Json::parse(dump(Json(x))).get<T>();
}

std::string temp_path(const char* name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Io, StaircaseKeepsZeros) {
    Staircase s{2, 0, -1};
    EXPECT_EQ(Json(s).dump(), "[2,0,-1]");
    EXPECT_EQ(round_trip(s), s);
    EXPECT_THROW(Json::parse("[0,1]").get<Staircase>(), ValidationError);
    EXPECT_THROW(Json::parse("[1.5]").get<Staircase>(), ValidationError);
    EXPECT_THROW(Json::parse("[]").get<Staircase>(), ValidationError);
}

TEST(Io, GtPathRoundTrip) {
    for (auto& [end, list] : enumerate_paths(Staircase{1, 0, 0}, 2, 1))
        for (auto& p : list) EXPECT_EQ(round_trip(p), p);
    auto bad = Json::parse(R"({"k":1,"l":0,"steps":[[0,0],[2,0]]})");
    EXPECT_THROW(bad.get<GtPath>(), ValidationError);
}

TEST(Io, MatrixIsBitExact) {
    std::mt19937_64 rng(1);
    MatC m = oracle::random_matrix(3, 5, rng);
    m(0, 0) = cplx(0.1, -1e-300);
    m(1, 1) = cplx(std::numeric_limits<double>::denorm_min(), 1.0 / 3.0);
    MatrixFile f{m, {{Staircase{2, 0}, 0, 0, 3}}};
    auto back = round_trip(f);
    ASSERT_EQ(back.matrix.rows(), 3);
    ASSERT_EQ(back.matrix.cols(), 5);
    for (Index i = 0; i < m.size(); ++i) {
        EXPECT_EQ(back.matrix.data()[i].real(), m.data()[i].real());
        EXPECT_EQ(back.matrix.data()[i].imag(), m.data()[i].imag());
    }
    EXPECT_EQ(back.layout, f.layout);
}

TEST(Io, MatrixLayoutIsRowMajor) {
    MatC m(2, 2);
    m << cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0);
    auto j = Json(MatrixFile{m, {}});
    EXPECT_EQ(j["data"][1][0].get<double>(), 2.0);
    EXPECT_FALSE(j.contains("layout"));
}

TEST(Io, MatrixRejectsBadData) {
    EXPECT_THROW(Json::parse(R"({"rows":1,"cols":2,"data":[[1,0]]})").get<MatrixFile>(), ValidationError);
    EXPECT_THROW(Json::parse(R"({"rows":1,"cols":1,"data":[[1]]})").get<MatrixFile>(), ValidationError);
    EXPECT_THROW(Json::parse(R"({"rows":1,"cols":1,"data":[[null,0]]})").get<MatrixFile>(), ValidationError);
    EXPECT_THROW(Json::parse(R"({"cols":1,"data":[[1,0]]})").get<MatrixFile>(), ValidationError);
}

TEST(Io, SpecRoundTrip) {
    std::mt19937_64 rng(2);
    ExtremalSpec s{3, 3, 3, {}};
    for (auto& t : enumerate_extremal_triples(3, 3, 3))
        if (s.assignments.empty() || s.assignments.back().lambda != t.lambda) {
            VecC psi = oracle::random_matrix(static_cast<long>(t.multiplicity), 1, rng);
            s.assignments.push_back({t.lambda, t.mu, t.gamma, psi / psi.norm()});
        }
    auto back = round_trip(s);
    EXPECT_EQ(back.m, s.m);
    EXPECT_EQ(back.n, s.n);
    EXPECT_EQ(back.d, s.d);
    ASSERT_EQ(back.assignments.size(), s.assignments.size());
    for (std::size_t i = 0; i < s.assignments.size(); ++i) {
        EXPECT_EQ(back.assignments[i].lambda, s.assignments[i].lambda);
        EXPECT_EQ(back.assignments[i].mu, s.assignments[i].mu);
        EXPECT_EQ(back.assignments[i].gamma, s.assignments[i].gamma);
        EXPECT_EQ(back.assignments[i].psi, s.assignments[i].psi);
    }
}

TEST(Io, SpecFormatAndValidation) {
    auto j = Json::parse(R"({"m":1,"n":1,"d":2,"assignments":[
        {"lambda":[1,0],"mu":[1,0],"gamma":[0,0],"psi":[[1,0]]}]})");
    auto s = j.get<ExtremalSpec>();
    EXPECT_EQ(s.assignments.at(0).gamma, Staircase::empty(2));
    j["assignments"][0]["mu"] = {2, 0};
    EXPECT_THROW(j.get<ExtremalSpec>(), ValidationError);
}

TEST(Io, ReportsRoundTrip) {
    VerificationReport r{"demo", {}, 42};
    r.add("a", 1.0 / 3.0, 1e-8);
    r.add("b", 0.0, 0.0);
    EXPECT_EQ(round_trip(r), r);
    auto j = Json(r);
    EXPECT_FALSE(j["passed"].get<bool>());
    j["cases"][0]["pass"] = true;
    EXPECT_THROW(j.get<VerificationReport>(), ValidationError);

    auto c = resource_estimate(6, 1, 3, 3, 3, 1, 0);
    EXPECT_EQ(round_trip(c), c);
}

TEST(Io, LedgerRoundTrip) {
    std::mt19937_64 rng(3);
    ExtremalSpec s{2, 3, 2, {}};
    s.assignments.push_back(make_assignment(Staircase{2, 0}, Staircase{3, 0}, Staircase{1, 0}));
    s.assignments.push_back(make_assignment(Staircase{1, 1}, Staircase{2, 1}, Staircase{1, 0}));
    auto res = streamed_apply(s, oracle::random_density(4, rng));
    ASSERT_FALSE(res.ledger.schedule.empty());
    EXPECT_EQ(round_trip(res.ledger), res.ledger);
}

TEST(Io, PathStateRoundTrip) {
    Assignment a = make_assignment(Staircase{2, 1, 0}, Staircase{1, 0, 0}, Staircase{0, 0, -2});
    PathState st = embedding_resource_state(a);
    auto back = round_trip(st);
    EXPECT_EQ(back.base, st.base);
    EXPECT_EQ(back.k, st.k);
    EXPECT_EQ(back.l, st.l);
    EXPECT_EQ(back.amplitudes, st.amplitudes);
}

TEST(Io, DistributionAndHistogram) {
    auto dist = exact_removal_distribution(Staircase{4, 2, 1});
    EXPECT_EQ(parse_distribution(distribution_json(dist)), dist);
    Histogram h{{Staircase{3, 1}, 5}, {Staircase{2, 2}, 7}};
    EXPECT_EQ(parse_histogram(histogram_json(h)), h);
    EXPECT_THROW(parse_distribution(Json::parse(R"([{"shape":[1,0],"p":"x"}])")), ValidationError);
}

TEST(Io, Files) {
    std::mt19937_64 rng(4);
    MatC m = oracle::random_density(4, rng);
    const auto path = temp_path("schurchan_io_matrix.json");
    write_matrix(path, m);
    EXPECT_EQ(read_matrix(path), m);
    std::remove(path.c_str());
    EXPECT_THROW(read_matrix(path), ValidationError);
    const auto junk = temp_path("schurchan_io_junk.json");
    {
        std::FILE* f = std::fopen(junk.c_str(), "w");
        std::fputs("{not json", f);
        std::fclose(f);
    }
    EXPECT_THROW(read_json(junk), ValidationError);
    std::remove(junk.c_str());
}
