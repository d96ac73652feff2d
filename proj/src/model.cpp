#include "symstat/model.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace symstat {

namespace {

using ordered_json = nlohmann::ordered_json;

double read_weight(const ordered_json& v, const std::string& where) {
    if (!v.is_number())
        throw ParseError("expected a number for " + where);
    double x = v.get<double>();
    if (!std::isfinite(x))
        throw ParseError("non-finite weight in " + where);
    if (x < 0.0)
        throw ParseError("negative weight in " + where);
    return x;
}

Vector read_vector(const ordered_json& arr, int m, const std::string& name) {
    if (!arr.is_array())
        throw ParseError("field '" + name + "' must be an array");
    if (static_cast<int>(arr.size()) != m)
        throw ParseError("field '" + name + "' has length " + std::to_string(arr.size()) +
                         ", expected " + std::to_string(m));
    Vector v(m);
    for (int i = 0; i < m; ++i)
        v(i) = read_weight(arr[i], name + "[" + std::to_string(i) + "]");
    return v;
}

Matrix read_matrix(const ordered_json& rows, int m, const std::string& name) {
    if (!rows.is_array())
        throw ParseError("matrix for letter '" + name + "' must be an array of rows");
    if (static_cast<int>(rows.size()) != m)
        throw ParseError("matrix for letter '" + name + "' has " + std::to_string(rows.size()) +
                         " rows, expected " + std::to_string(m));
    Matrix a(m, m);
    for (int i = 0; i < m; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw ParseError("matrix for letter '" + name + "', row " + std::to_string(i) +
                             ": expected " + std::to_string(m) + " entries");
        for (int j = 0; j < m; ++j)
            a(i, j) = read_weight(row[j], "letter '" + name + "' entry [" +
                                              std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return a;
}

char read_letter_key(const std::string& key) {
    if (key.size() != 1 || !std::isprint(static_cast<unsigned char>(key[0])))
        throw ParseError("letter '" + key + "' is not a single printable character");
    return key[0];
}

} // namespace

LinearRepresentation parse_model_text(const std::string& text) {
    std::istringstream in(text);
    return parse_model(in);
}

LinearRepresentation parse_model(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("model file must contain a JSON object");
    for (const auto& key : {"size", "counted_letter", "initial", "final", "letters"})
        if (!doc.contains(key))
            throw ParseError(std::string("missing field '") + key + "'");

    LinearRepresentation rep;
    if (!doc["size"].is_number_integer() || doc["size"].get<long>() <= 0)
        throw ParseError("field 'size' must be a positive integer");
    rep.size = doc["size"].get<int>();
    rep.counted_letter = read_letter_key(doc["counted_letter"].get<std::string>());
    rep.initial = read_vector(doc["initial"], rep.size, "initial");
    rep.final_weights = read_vector(doc["final"], rep.size, "final");

    const auto& letters = doc["letters"];
    if (!letters.is_object())
        throw ParseError("field 'letters' must be an object");
    for (auto it = letters.begin(); it != letters.end(); ++it) {
        char c = read_letter_key(it.key());
        if (rep.letter_matrices.count(c))
            throw ParseError(std::string("duplicate letter '") + c + "'");
        rep.letter_matrices[c] = read_matrix(it.value(), rep.size, it.key());
    }
    if (rep.letter_matrices.size() < 2)
        throw ParseError("at least two letters are required");
    if (!rep.letter_matrices.count(rep.counted_letter))
        throw ParseError(std::string("counted letter '") + rep.counted_letter +
                         "' has no transition matrix");
    return rep;
}

LinearRepresentation load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open model file '" + path + "'");
    return parse_model(in);
}

std::string serialize_model(const LinearRepresentation& rep) {
    ordered_json doc;
    doc["size"] = rep.size;
    doc["counted_letter"] = std::string(1, rep.counted_letter);
    auto vec = [](const Vector& v) {
        ordered_json a = ordered_json::array();
        for (int i = 0; i < v.size(); ++i)
            a.push_back(v(i));
        return a;
    };
    doc["initial"] = vec(rep.initial);
    doc["final"] = vec(rep.final_weights);
    ordered_json letters = ordered_json::object();
    for (const auto& [c, mat] : rep.letter_matrices) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < mat.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < mat.cols(); ++j)
                row.push_back(mat(i, j));
            rows.push_back(row);
        }
        letters[std::string(1, c)] = rows;
    }
    doc["letters"] = letters;
    return doc.dump(2) + "\n";
}

namespace {

// Forward/backward reachability over the support digraph of M.
std::vector<bool> reachable(const Matrix& m, const std::vector<bool>& seeds, bool forward) {
    const int n = static_cast<int>(m.rows());
    std::vector<bool> seen = seeds;
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
        if (seen[i])
            stack.push_back(i);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            double edge = forward ? m(v, w) : m(w, v);
            if (edge > 0.0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

} // namespace

ValidatedModel validate(const LinearRepresentation& rep) {
    const int m = rep.size;
    if (rep.initial.size() != m || rep.final_weights.size() != m)
        throw ValidationError("initial/final vector length does not match size");
    if (rep.initial.maxCoeff() <= 0.0)
        throw ValidationError("initial vector is zero");
    if (rep.final_weights.maxCoeff() <= 0.0)
        throw ValidationError("final vector is zero");

    auto a_it = rep.letter_matrices.find(rep.counted_letter);
    if (a_it == rep.letter_matrices.end())
        throw ValidationError(std::string("counted letter '") + rep.counted_letter +
                              "' has no transition matrix");
    Matrix a = a_it->second;
    Matrix b = Matrix::Zero(m, m);
    for (const auto& [c, mat] : rep.letter_matrices) {
        if (mat.rows() != m || mat.cols() != m)
            throw ValidationError(std::string("matrix for letter '") + c +
                                  "' does not match size");
        if (c != rep.counted_letter)
            b += mat;
    }
    if (a.maxCoeff() <= 0.0)
        throw ValidationError(std::string("matrix for counted letter '") + rep.counted_letter +
                              "' is zero");
    if (rep.letter_matrices.size() < 2 || b.maxCoeff() <= 0.0)
        throw ValidationError("aggregated matrix of non-counted letters is zero");

    Matrix total = a + b;

    // Structural positivity: some state reachable from supp(xi) and
    // co-reachable to supp(eta) must lie on a cycle of the useful subgraph.
    std::vector<bool> from_xi(m), to_eta(m);
    for (int i = 0; i < m; ++i) {
        from_xi[i] = rep.initial(i) > 0.0;
        to_eta[i] = rep.final_weights(i) > 0.0;
    }
    auto fwd = reachable(total, from_xi, true);
    auto bwd = reachable(total, to_eta, false);
    std::vector<bool> useful(m);
    bool any_useful = false;
    for (int i = 0; i < m; ++i) {
        useful[i] = fwd[i] && bwd[i];
        any_useful = any_useful || useful[i];
    }
    if (!any_useful)
        throw ValidationError("no state is both reachable from the initial vector "
                              "and co-reachable to the final vector");
    Matrix restricted = total;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!useful[i] || !useful[j])
                restricted(i, j) = 0.0;
    bool cycle_found = false;
    for (int s = 0; s < m && !cycle_found; ++s) {
        if (!useful[s])
            continue;
        // s lies on a cycle of the useful subgraph iff some useful successor
        // of s reaches s again within useful states.
        std::vector<bool> seed(m, false);
        for (int w = 0; w < m; ++w)
            if (useful[w] && total(s, w) > 0.0)
                seed[w] = true;
        auto back = reachable(restricted, seed, true);
        cycle_found = back[s];
    }
    if (!cycle_found)
        throw ValidationError("no useful state lies on a cycle; "
                              "words of unbounded length have zero weight");

    // Numeric sweep n = 1..2m; renormalize to keep magnitudes sane.
    Vector v = rep.final_weights;
    for (int n = 1; n <= 2 * m; ++n) {
        v = total * v;
        double s = v.sum();
        if (s <= 0.0)
            throw ValidationError("total weight of length-" + std::to_string(n) +
                                  " words is zero");
        v /= s;
        if (rep.initial.dot(v) <= 0.0)
            throw ValidationError("no accepted word of length " + std::to_string(n) +
                                  " has positive weight");
    }

    ValidatedModel out;
    out.representation = rep;
    out.a_matrix = std::move(a);
    out.b_matrix = std::move(b);
    return out;
}

} // namespace symstat
