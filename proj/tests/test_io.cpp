#include "doctest.h"

#include <cstdio>

#include "cayley/io.hpp"
#include "support/fixtures.hpp"

using namespace cayley;

TEST_CASE("tensor round trip is byte identical") {
    BlockTensor A = random_tensor(GF(101), PipelineShape::Genus4, 7);
    std::string text = tensor_to_string(A);
    BlockTensor B = tensor_from_string(text);
    CHECK(tensor_to_string(B) == text);
    for (int l = 0; l < A.r(); ++l)
        for (int i = 0; i <= A.n(); ++i)
            CHECK(A.block(l).slices[size_t(i)] == B.block(l).slices[size_t(i)]);

    std::string path = "/tmp/cayley_io_test_tensor.json";
    save_tensor(A, path);
    BlockTensor C = load_tensor(path);
    CHECK(tensor_to_string(C) == text);
    std::remove(path.c_str());
}

TEST_CASE("asymmetric slices are rejected on load") {
    Json j = tensor_to_json(fixtures::cayley_cubic(GF(11)));
    j["blocks"][0]["slices"][0][0][1] = 5;  // break symmetry
    CHECK_THROWS(tensor_from_json(j));
}

TEST_CASE("extension coefficients survive the round trip") {
    const Field& f = GF(11, 2);
    Block b;
    b.d = 2;
    for (int i = 0; i < 3; ++i) {
        Matrix s(f, 2, 2);
        s(0, 0) = f.element({uint32_t(i + 1), 3});
        s(1, 1) = f.element({5, uint32_t(i)});
        s(0, 1) = s(1, 0) = f.element({2, 7});
        b.slices.push_back(s);
    }
    BlockTensor A(f, 2, {b});
    BlockTensor B = tensor_from_string(tensor_to_string(A));
    CHECK(B.field().e == 2);
    CHECK(B.block(0).slices[0] == A.block(0).slices[0]);
}

TEST_CASE("pipeline report serialization") {
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 1;
    SeededInstance inst = seed_genus3(r);
    PipelineResult res = genus3_pipeline(inst.tensor);
    std::string tensor_text = tensor_to_string(inst.tensor);
    Json rep = report_to_json(res, detail::digest(tensor_text));
    CHECK(rep["shape"] == "genus3");
    CHECK(rep["cayley"]["count"] == 8);
    CHECK(rep["cayley"]["complete"] == true);
    CHECK(rep["secants"]["count"] == 28);
    CHECK(rep["hyperplanes"].size() == 28);
    bool all_pass = true;
    for (const auto& c : rep["checks"])
        if (!c["pass"].get<bool>()) all_pass = false;
    CHECK(all_pass);

    // deterministic: same run, same bytes
    PipelineResult res2 = genus3_pipeline(inst.tensor);
    Json rep2 = report_to_json(res2, detail::digest(tensor_text));
    CHECK(rep.dump() == rep2.dump());
}
