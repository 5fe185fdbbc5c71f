#include "doctest.h"

#include "cayley/pipeline.hpp"
#include "support/rng.hpp"

using namespace cayley;

TEST_CASE("genus-3 pipeline on a fully rational octad") {
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 1;
    SeededInstance inst = seed_genus3(r);
    PipelineResult res = genus3_pipeline(inst.tensor);
    for (const auto& c : res.checks) {
        INFO(c.claim, ": ", c.detail);
        CHECK(c.pass);
    }
    CHECK(res.census.planes.size() == 28);
}

TEST_CASE("genus-3 pipeline counts for a mixed orbit type") {
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 7;
    r.octad_rational = 5;
    r.octad_pairs = 0;
    r.octad_high = 3;
    SeededInstance inst = seed_genus3(r);
    PipelineOptions opts;
    opts.tangency_reports = false;
    opts.known_points = inst.seeds;
    PipelineResult res = genus3_pipeline(inst.tensor, opts);
    for (const auto& c : res.checks) {
        INFO(c.claim, ": ", c.detail);
        CHECK(c.pass);
    }
    // C(5,2) + 0 = 10 rational bitangents
    int stable = 0;
    auto secants = all_secants(res.variety);
    for (const auto& s : secants)
        if (s.frobenius_stable) ++stable;
    CHECK(stable == 10);
}

TEST_CASE("genus-4 pipeline") {
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 1;
    SeededInstance inst = seed_genus4(r);
    PipelineResult res = genus4_pipeline(inst.tensor);
    for (const auto& c : res.checks) {
        INFO(c.claim, ": ", c.detail);
        CHECK(c.pass);
    }
    REQUIRE(res.projection.has_value());
    CHECK(res.projection->images.size() == 8);
    CHECK(res.projection->lines.size() == 28);
    CHECK(res.census.planes.size() == 64);
}

TEST_CASE("quintic pipeline") {
    // q must be large enough that the 120 planes stay distinct; small
    // fields make the tritangents collide through the 20 nodes
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 3;
    r.retries = 4000;
    r.enum_opts.threads = 2;
    SeededInstance inst = seed_quintic_validated(r);
    PipelineResult res = quintic_pipeline(inst.tensor);
    for (const auto& c : res.checks) {
        INFO(c.claim, ": ", c.detail);
        CHECK(c.pass);
    }
    CHECK(res.census.planes.size() == 120);
}

TEST_CASE("recillas construction") {
    const Field& f = GF(101);
    SplitMix rng(17);

    // slice layout matches the construction for symbolic inputs
    std::optional<RecillasInput> input;
    while (!input) input = recillas_random_split(f, rng);
    BlockTensor A = recillas_construct(*input);
    CHECK(A.block(0).slices[0](0, 0) == -f.one());
    CHECK(A.block(0).slices[1](0, 1) == -f.from_int(2).inv());
    CHECK(A.block(0).slices[2](1, 1) == -f.one());
    CHECK(A.block(0).slices[3].is_zero());
    CHECK(A.block(1).slices[0] == input->a);
    CHECK(A.block(1).slices[1] == input->b);
    CHECK(A.block(1).slices[2] == input->c);
    CHECK(A.block(1).slices[3] == input->conic);

    // intersection points of the conic with Z(det B)
    std::vector<ProjPoint> alphas;
    enumerate_projective(2, f, 1 << 20, [&](const Vec& w) {
        Fq conic = f.zero(), av = f.zero(), bv = f.zero(), cv = f.zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                conic += w[size_t(i)] * input->conic(i, j) * w[size_t(j)];
                av += w[size_t(i)] * input->a(i, j) * w[size_t(j)];
                bv += w[size_t(i)] * input->b(i, j) * w[size_t(j)];
                cv += w[size_t(i)] * input->c(i, j) * w[size_t(j)];
            }
        if (conic.is_zero() && (av * cv - bv * bv).is_zero()) alphas.push_back(ProjPoint{Vec(w)});
    });
    CHECK(alphas.size() == 8);

    // all 16 lifted points are in the Cayley variety
    auto lifts = recillas_lifts(*input, alphas);
    CHECK(lifts.size() == 16);
    for (const auto& y : lifts) CHECK(on_cayley(A, y));

    // degenerate conic rejected
    RecillasInput bad = *input;
    bad.conic = Matrix(f, 3, 3);
    CHECK_THROWS_AS(recillas_construct(bad), DegenerateConic);
}

TEST_CASE("recillas tensor drives the genus-4 pipeline") {
    // ~1/256 of draws survive the square conditions, so most tries are
    // rejected before any geometry runs
    const Field& f = GF(101);
    SplitMix rng(29);
    for (int tries = 0; tries < 60000; ++tries) {
        auto input = recillas_random_split(f, rng);
        if (!input) continue;
        BlockTensor A = recillas_construct(*input);
        PipelineResult res;
        try {
            res = genus4_pipeline(A);
        } catch (const NondegeneracyFailure&) {
            continue;
        }
        if (!res.all_pass()) continue;  // occasional singular draws
        // pi(Cayley) equals the 8 intersection points, fibers of size 2
        REQUIRE(res.projection.has_value());
        CHECK(res.projection->images.size() == 8);
        for (const auto& img : res.projection->images) {
            Fq conic = f.zero(), av = f.zero(), bv = f.zero(), cv = f.zero();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    conic += img.coords[size_t(i)] * input->conic(i, j) * img.coords[size_t(j)];
                    av += img.coords[size_t(i)] * input->a(i, j) * img.coords[size_t(j)];
                    bv += img.coords[size_t(i)] * input->b(i, j) * img.coords[size_t(j)];
                    cv += img.coords[size_t(i)] * input->c(i, j) * img.coords[size_t(j)];
                }
            CHECK(conic.is_zero());
            CHECK((av * cv - bv * bv).is_zero());
        }
        return;  // one passing instance is enough
    }
    FAIL("no smooth recillas instance found");
}
