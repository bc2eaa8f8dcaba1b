#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bdlab/checkpoint.hpp"

using namespace bdlab;

TEST_CASE("checkpoint file round-trip") {
    NumericContext ctx = make_context(required_precision_for_generic(150, 30), 20, 2, 1);
    CkGenericOptions stop;
    stop.stop_at_j = 60;
    auto part = ck_generic(150, ctx, stop);
    REQUIRE_FALSE(part.complete);

    ExperimentCheckpoint cp = checkpoint_from_state(part.state, "fp-123", false);
    std::string path = "/tmp/bdlab_test_checkpoint.txt";
    write_checkpoint_file(path, cp);
    ExperimentCheckpoint rd = read_checkpoint_file(path);
    CHECK(rd.config_fingerprint == "fp-123");
    CHECK(rd.k == 150);
    CHECK(rd.next_j == 60);
    CHECK_FALSE(rd.complete);

    GenericState st = state_from_checkpoint(rd);
    CHECK(st.partial_sum == part.state.partial_sum);  // bit-exact decimal round-trip
    CHECK(st.binomial == part.state.binomial);
    CHECK(st.working_digits == part.state.working_digits);

    // resuming from the file reproduces the uninterrupted run exactly
    CkGenericOptions resume;
    resume.resume = &st;
    auto rest = ck_generic(150, ctx, resume);
    auto full = ck_generic(150, ctx);
    CHECK(rest.value.str() == full.value.str());
    std::remove(path.c_str());
}

TEST_CASE("truncated checkpoint file is rejected") {
    std::string path = "/tmp/bdlab_test_checkpoint_trunc.txt";
    {
        std::ofstream out(path, std::ios::trunc);
        out << "config_fingerprint: abc\nk: 10\nnext_j: 5\n";
    }
    CHECK_THROWS_AS(read_checkpoint_file(path), FormatError);
    std::remove(path.c_str());
}
