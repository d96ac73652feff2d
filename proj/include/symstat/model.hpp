#pragma once

#include "symstat/common.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace symstat {

// A weighted finite automaton given as a linear representation: an initial
// weight vector, one nonnegative transition matrix per letter, and a final
// weight vector. The weight of a word is xi' * M_{w1} * ... * M_{wn} * eta,
// and the statistic of interest counts occurrences of `counted_letter`.
//
// Model file format (JSON):
//   {
//     "size": 4,
//     "counted_letter": "a",
//     "initial": [1, 0, 0, 0],
//     "final":   [0, 0, 1, 1],
//     "letters": { "a": [[...], ...], "b": [[...], ...] }
//   }
// Matrices are lists of rows; entry [i][j] is the weight of the transition
// from state i+1 to state j+1.
struct LinearRepresentation {
    int size = 0;
    Vector initial;
    Vector final_weights;
    std::map<char, Matrix> letter_matrices;
    char counted_letter = 'a';
};

// The representation with the non-counted letters aggregated into a single
// matrix: a_matrix is the counted letter's matrix, b_matrix the entrywise sum
// of all the others. The split is all the occurrence statistic depends on.
struct ValidatedModel {
    LinearRepresentation representation;
    Matrix a_matrix;
    Matrix b_matrix;

    int size() const { return representation.size; }
    const Vector& initial() const { return representation.initial; }
    const Vector& final_weights() const { return representation.final_weights; }
    Matrix total_matrix() const { return a_matrix + b_matrix; }
};

LinearRepresentation parse_model(std::istream& in);
LinearRepresentation parse_model_text(const std::string& text);
LinearRepresentation load_model_file(const std::string& path);

// Serializes back to the file format; parse(serialize(r)) == r field by field.
std::string serialize_model(const LinearRepresentation& rep);

// Checks the representation invariants: nonzero initial/final vectors, a
// nonzero matrix on each side of the counted/non-counted split, and positive
// total weight xi'(A+B)^n eta for every n >= 1. The positivity check is
// structural (a useful state on a cycle must exist) plus a numeric sweep over
// n = 1..2m; beyond 2m positivity follows by pumping the cycle.
ValidatedModel validate(const LinearRepresentation& rep);

} // namespace symstat
