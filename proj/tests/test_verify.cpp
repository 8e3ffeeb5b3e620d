#include <catch2/catch_amalgamated.hpp>

#include "spreadlab/verify.hpp"

using namespace spreadlab;

namespace {

CanonicalParallelism canon(const Profile& p, int h, bool oriented, Gamma g,
                           Placement pl = {}) {
    return canonicalize(ParallelismSpec{p, h, pl, oriented, g});
}

} // namespace

TEST_CASE("spread suite passes on the named families") {
    for (const Profile& p :
         {profile_regular(1.0), profile_satz1(0.25, 1.0), profile_satz2(0.5)}) {
        const CheckReport rep = check_spread(make_spread(p, +1), 300, 300, 7);
        INFO(rep.to_json_string());
        CHECK(rep.pass);
        CHECK(rep.worst_residual <= 1e-8);
        CHECK(rep.witness.is_null());
    }
}

TEST_CASE("spread suite fails with a witness on a corrupted profile") {
    // slope bump strong enough to make a increase near r = 1: the
    // hyperboloids overlap there
    std::vector<double> rs, as, bs;
    for (const double r : log_grid(1e-4, 1e4, 120)) {
        rs.push_back(r);
        as.push_back((1.0 / r) * (1.0 + 6.0 * std::exp(-std::pow(std::log(r), 2))));
        bs.push_back(0.0);
    }
    const CheckReport rep = check_spread(make_spread(profile_table(rs, as, bs), +1), 400, 200, 7);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witness.is_null());
    const std::string j = rep.to_json_string();
    CHECK(j.find("\"witness\":{") != std::string::npos);
}

TEST_CASE("parallelism suite verdicts") {
    // non-oriented O(2) runs on concentric data
    CHECK(check_parallelism(canon(profile_satz1(0.5, 0.0), +1, false, Gamma::O2), 200, 7).pass);
    CHECK(check_parallelism(canon(profile_regular(2.0), +1, false, Gamma::O2), 200, 7).pass);

    // oriented runs on acentric data
    CHECK(check_parallelism(canon(profile_satz2(1.0), +1, true, Gamma::SO2), 200, 7).pass);
    CHECK(check_parallelism(canon(profile_satz1(0.5, 1.0), -1, true, Gamma::SO2), 200, 7).pass);

    // the designed failure: non-oriented acentric
    const CheckReport bad = check_parallelism(canon(profile_satz2(1.0), +1, false, Gamma::SO2),
                                              200, 7);
    CHECK_FALSE(bad.pass);
    const std::string j = bad.to_json_string();
    CHECK(j.find("partition_failure") != std::string::npos);
    CHECK(j.find("class_half_turn") != std::string::npos);
}

TEST_CASE("alpha suite") {
    const CheckReport rep = check_alpha(300, 7);
    INFO(rep.to_json_string());
    CHECK(rep.pass);
}

TEST_CASE("distance function suite") {
    for (const Profile& p : {profile_regular(1.0), profile_satz1(0.5, 0.0),
                             profile_satz1(0.5, 1.0), profile_satz2(1.0)}) {
        const CheckReport rep = check_d_function(p, 7);
        INFO(rep.to_json_string());
        CHECK(rep.pass);
    }
}

TEST_CASE("clifford suite verdicts") {
    CHECK(check_clifford(canon(profile_regular(1.0), +1, true, Gamma::SO2), 120, 7).pass);
    // a non-Clifford construction passing means the disagreement was found
    const CheckReport rep = check_clifford(canon(profile_satz1(0.5, 0.0), +1, true, Gamma::SO2),
                                           120, 7);
    CHECK(rep.pass);
    const std::string j = rep.to_json_string();
    CHECK(j.find("\"expected_clifford\":false") != std::string::npos);
}

TEST_CASE("reflection suite") {
    for (const Profile& p : {profile_regular(1.0), profile_satz2(1.0)}) {
        const CheckReport rep = check_reflection(make_spread(p, +1), 100, 7);
        INFO(rep.to_json_string());
        CHECK(rep.pass);
    }
}

TEST_CASE("reports are deterministic and thread independent") {
    const auto cp = canon(profile_satz2(1.0), +1, true, Gamma::SO2);
    const std::string a = check_parallelism(cp, 150, 42).to_json_string();
    const std::string b = check_parallelism(cp, 150, 42).to_json_string();
    CHECK(a == b);
    const std::string c = check_spread(make_spread(profile_regular(1.0), +1), 200, 200, 42)
                              .to_json_string();
    const std::string d = check_spread(make_spread(profile_regular(1.0), +1), 200, 200, 42)
                              .to_json_string();
    CHECK(c == d);
    // a different seed changes the sampled payload
    const std::string e = check_spread(make_spread(profile_regular(1.0), +1), 200, 200, 43)
                              .to_json_string();
    CHECK(c != e);

    // explicit worker counts leave the result unchanged
    std::vector<std::pair<int, double>> marks;
    auto run = [&](unsigned threads) {
        std::vector<double> vals(64);
        parallel_for(vals.size(), [&](std::size_t i) {
            Rng rng = Rng::for_index(99, i);
            vals[i] = rng.uniform();
        }, threads);
        return vals;
    };
    CHECK(run(1) == run(4));
}

TEST_CASE("json formatting is stable at 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-9) == "-2.5000000000000001e-09");
    Json j = Json::object();
    j.set("x", Json::real(1.0 / 3.0));
    CHECK(j.dump() == "{\"x\":0.33333333333333331}");
}
