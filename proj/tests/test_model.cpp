#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symstat/model.hpp"

#include <fstream>
#include <sstream>

using namespace symstat;

namespace {

std::string models_dir = MODELS_DIR;

LinearRepresentation load(const std::string& name) {
    return load_model_file(models_dir + "/" + name);
}

const char* kOneState = R"({
  "size": 1, "counted_letter": "a",
  "initial": [1], "final": [1],
  "letters": { "a": [[1]], "b": [[1]] }
})";

} // namespace

TEST_CASE("figure-1 file parses with all fields") {
    LinearRepresentation rep = load("fig1.json");
    CHECK(rep.size == 4);
    CHECK(rep.counted_letter == 'a');
    CHECK(rep.letter_matrices.size() == 3);
    CHECK(rep.initial(0) == 1.0);
    CHECK(rep.initial(1) == 0.0);
    CHECK(rep.final_weights(2) == 1.0);
    CHECK(rep.final_weights(3) == 1.0);
    CHECK(rep.letter_matrices.at('a')(0, 1) == 2.0);
    CHECK(rep.letter_matrices.at('b')(2, 3) == 2.0);
    CHECK(rep.letter_matrices.at('c')(0, 2) == 1.0);
}

TEST_CASE("smallest two-letter model parses and validates") {
    LinearRepresentation rep = parse_model_text(kOneState);
    CHECK(rep.size == 1);
    ValidatedModel vm = validate(rep);
    CHECK(vm.a_matrix(0, 0) == 1.0);
    CHECK(vm.b_matrix(0, 0) == 1.0);
}

TEST_CASE("dimension mismatch is a parse error") {
    const char* text = R"({
      "size": 3, "counted_letter": "a",
      "initial": [1,0,0], "final": [1,1,1],
      "letters": { "a": [[1,0],[0,1]], "b": [[1,0,0],[0,1,0],[0,0,1]] }
    })";
    CHECK_THROWS_AS(parse_model_text(text), ParseError);
}

TEST_CASE("bad inputs are rejected with parse errors") {
    CHECK_THROWS_WITH_AS(parse_model_text("{ not json"),
                         doctest::Contains("syntax error"), ParseError);
    CHECK_THROWS_AS(parse_model_text(R"({
      "size": 1, "counted_letter": "a",
      "initial": [1], "final": [1],
      "letters": { "a": [[-1]], "b": [[1]] }
    })"), ParseError);
    CHECK_THROWS_AS(parse_model_text(R"({
      "size": 1, "counted_letter": "z",
      "initial": [1], "final": [1],
      "letters": { "a": [[1]], "b": [[1]] }
    })"), ParseError);
    CHECK_THROWS_AS(parse_model_text(R"({
      "size": 1, "counted_letter": "a",
      "initial": [1], "final": [1],
      "letters": { "a": [[1]] }
    })"), ParseError);
}

TEST_CASE("parse / serialize round-trip is the identity") {
    for (const char* name : {"fig1.json", "fig2.json", "tmix.json", "binomial.json",
                             "primitive2.json", "periodic_pair.json"}) {
        LinearRepresentation rep = load(name);
        LinearRepresentation again = parse_model_text(serialize_model(rep));
        CHECK(again.size == rep.size);
        CHECK(again.counted_letter == rep.counted_letter);
        CHECK(again.initial == rep.initial);
        CHECK(again.final_weights == rep.final_weights);
        REQUIRE(again.letter_matrices.size() == rep.letter_matrices.size());
        for (const auto& [c, mat] : rep.letter_matrices)
            CHECK(again.letter_matrices.at(c) == mat);
    }
}

TEST_CASE("figure-1 aggregation sums the non-counted letters") {
    LinearRepresentation rep = load("fig1.json");
    ValidatedModel vm = validate(rep);
    CHECK(vm.a_matrix == rep.letter_matrices.at('a'));
    Matrix expected = rep.letter_matrices.at('b') + rep.letter_matrices.at('c');
    CHECK(vm.b_matrix == expected);

    Matrix sum_all = Matrix::Zero(4, 4);
    for (const auto& [c, mat] : rep.letter_matrices)
        sum_all += mat;
    CHECK(((vm.a_matrix + vm.b_matrix) - sum_all).cwiseAbs().maxCoeff() <=
          1e-12 * sum_all.cwiseAbs().maxCoeff());
}

TEST_CASE("zero vectors and zero sides are rejected") {
    LinearRepresentation rep = load("fig1.json");
    rep.final_weights.setZero();
    CHECK_THROWS_WITH_AS(validate(rep), doctest::Contains("final vector is zero"),
                         ValidationError);

    rep = load("fig1.json");
    rep.initial.setZero();
    CHECK_THROWS_WITH_AS(validate(rep), doctest::Contains("initial vector is zero"),
                         ValidationError);

    rep = load("fig1.json");
    rep.letter_matrices['a'].setZero();
    CHECK_THROWS_AS(validate(rep), ValidationError);

    rep = load("fig1.json");
    rep.letter_matrices['b'].setZero();
    rep.letter_matrices['c'].setZero();
    CHECK_THROWS_AS(validate(rep), ValidationError);
}

TEST_CASE("positivity failure reports a witness length") {
    // Alternating two-cycle accepting only at state 1: odd lengths are empty.
    LinearRepresentation rep = load("periodic_pair.json");
    rep.final_weights(1) = 0.0;
    CHECK_THROWS_WITH_AS(validate(rep), doctest::Contains("length 1"), ValidationError);
}

TEST_CASE("accepted models have positive mass for n = 1 .. 2m") {
    for (const char* name : {"fig1.json", "fig2.json", "tmix.json", "binomial.json",
                             "primitive2.json", "periodic_pair.json"}) {
        ValidatedModel vm = validate(load(name));
        Matrix total = vm.total_matrix();
        Vector v = vm.final_weights();
        for (int n = 1; n <= 2 * vm.size(); ++n) {
            v = total * v;
            v /= v.sum();
            CHECK(vm.initial().dot(v) > 0.0);
        }
    }
}
