#include "symstat/structure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace symstat {

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::Primitive: return "primitive";
    case Variant::DominantCommunicating: return "dominant communicating";
    case Variant::EquipotentCommunicating: return "equipotent communicating";
    case Variant::DominantSum: return "dominant sum";
    case Variant::EquipotentSum: return "equipotent sum";
    case Variant::Unsupported: return "unsupported";
    }
    return "unsupported";
}

std::string subcase_name(EquipotentSubcase s) {
    switch (s) {
    case EquipotentSubcase::BetaDiffer: return "beta1 != beta2";
    case EquipotentSubcase::BetaEqualGammaDiffer: return "beta1 = beta2, gamma1 != gamma2";
    case EquipotentSubcase::BetaGammaEqual: return "beta1 = beta2, gamma1 = gamma2";
    }
    return "";
}

namespace {

// Tarjan's strongly connected components; emitted in reverse topological
// order, so the result is reversed before returning.
std::vector<std::vector<int>> tarjan_sccs(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    std::function<void(int)> strongconnect = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < n; ++w) {
            if (m(v, w) <= 0.0)
                continue;
            if (index[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
                if (w == v)
                    break;
            }
            std::sort(comp.begin(), comp.end());
            sccs.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0)
            strongconnect(v);
    std::reverse(sccs.begin(), sccs.end());
    return sccs;
}

Matrix extract_block(const Matrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    Matrix out(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            out(i, j) = m(rows[i], cols[j]);
    return out;
}

Vector extract_block(const Vector& v, const std::vector<int>& idx) {
    Vector out(idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
        out(i) = v(idx[i]);
    return out;
}

} // namespace

ComponentStructure condensation(const ValidatedModel& model) {
    Matrix total = model.total_matrix();
    ComponentStructure cs;
    cs.components = tarjan_sccs(total);

    // Topological order with components tied to their smallest state index,
    // so uncoupled components keep the state order of the file.
    {
        const size_t k = cs.components.size();
        std::vector<std::vector<bool>> edge(k, std::vector<bool>(k, false));
        std::vector<int> indegree(k, 0);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                if (i != j &&
                    extract_block(total, cs.components[i], cs.components[j]).maxCoeff() > 0.0) {
                    edge[i][j] = true;
                    ++indegree[j];
                }
        std::vector<std::vector<int>> ordered;
        std::vector<bool> done(k, false);
        for (size_t step = 0; step < k; ++step) {
            int pick = -1;
            for (size_t i = 0; i < k; ++i)
                if (!done[i] && indegree[i] == 0 &&
                    (pick < 0 || cs.components[i][0] < cs.components[pick][0]))
                    pick = static_cast<int>(i);
            if (pick < 0)
                throw StructureError("condensation graph is not acyclic");
            done[pick] = true;
            ordered.push_back(cs.components[pick]);
            for (size_t j = 0; j < k; ++j)
                if (edge[pick][j])
                    --indegree[j];
        }
        cs.components = std::move(ordered);
    }

    const size_t k = cs.components.size();
    cs.coupling.assign(k, std::vector<bool>(k, false));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (i != j)
                cs.coupling[i][j] =
                    extract_block(total, cs.components[i], cs.components[j]).maxCoeff() > 0.0;

    for (const auto& comp : cs.components) {
        cs.a_blocks.push_back(extract_block(model.a_matrix, comp, comp));
        cs.b_blocks.push_back(extract_block(model.b_matrix, comp, comp));
        cs.xi_blocks.push_back(extract_block(model.initial(), comp));
        cs.eta_blocks.push_back(extract_block(model.final_weights(), comp));
    }
    if (k == 2) {
        cs.a_coupling = extract_block(model.a_matrix, cs.components[0], cs.components[1]);
        cs.b_coupling = extract_block(model.b_matrix, cs.components[0], cs.components[1]);
    }
    return cs;
}

namespace {

struct CycleVectors {
    std::vector<std::array<long, 2>> vectors;  // (length, counted-letter count)
    long length_gcd = 0;
};

// Enumerates vertex-simple cycles of the support graph of A+B, each rooted at
// its smallest vertex. Edges carrying both letters contribute a count range;
// recording count and count+1 spans the same lattice as all choices.
CycleVectors enumerate_cycles(const Matrix& a, const Matrix& b, long budget) {
    const int n = static_cast<int>(a.rows());
    CycleVectors out;
    long seen = 0;

    std::vector<bool> on_path(n, false);
    std::vector<int> path;

    int root = 0;
    std::function<void(int, long, long)> dfs = [&](int v, long count_min, long duals) {
        for (int w = 0; w < n; ++w) {
            bool has_a = a(v, w) > 0.0;
            bool has_b = b(v, w) > 0.0;
            if (!has_a && !has_b)
                continue;
            long add_min = (has_a && !has_b) ? 1 : 0;
            long add_dual = (has_a && has_b) ? 1 : 0;
            if (w == root) {
                long len = static_cast<long>(path.size());
                long cmin = count_min + add_min;
                if (++seen > budget)
                    throw StructureError("simple-cycle enumeration exceeded the budget of " +
                                         std::to_string(budget) +
                                         " cycles; reduce the component size");
                out.vectors.push_back({len, cmin});
                if (duals + add_dual > 0)
                    out.vectors.push_back({len, cmin + 1});
                out.length_gcd = std::gcd(out.length_gcd, len);
            } else if (w > root && !on_path[w]) {
                on_path[w] = true;
                path.push_back(w);
                dfs(w, count_min + add_min, duals + add_dual);
                path.pop_back();
                on_path[w] = false;
            }
        }
    };

    for (root = 0; root < n; ++root) {
        on_path[root] = true;
        path.assign(1, root);
        dfs(root, 0, 0);
        on_path[root] = false;
    }
    return out;
}

// Column-style Hermite reduction of the 2-row lattice spanned by the cycle
// vectors. The reduced basis is at most {(p, q), (0, r)}; the intersection
// with {0} x Z is generated by r.
struct LatticeBasis {
    long p = 0, q = 0;  // first vector, p > 0 when present
    long r = 0;         // second vector (0, r), r >= 0
    bool has_first = false;
};

LatticeBasis hermite_reduce(const std::vector<std::array<long, 2>>& vectors) {
    LatticeBasis basis;
    for (auto v : vectors) {
        long a = v[0], c = v[1];
        if (basis.has_first) {
            // Euclid on the first coordinates; column operations keep the
            // lattice unchanged.
            while (a != 0) {
                long k = basis.p / a;
                long np = basis.p - k * a, nq = basis.q - k * c;
                basis.p = a;
                basis.q = c;
                a = np;
                c = nq;
            }
            basis.r = std::gcd(basis.r, std::abs(c));
        } else if (a != 0) {
            if (a < 0) { a = -a; c = -c; }
            basis.has_first = true;
            basis.p = a;
            basis.q = c;
        } else {
            basis.r = std::gcd(basis.r, std::abs(c));
        }
    }
    if (basis.has_first && basis.r > 0) {
        // Canonical form: 0 <= q < r.
        long q = basis.q % basis.r;
        if (q < 0)
            q += basis.r;
        basis.q = q;
    }
    return basis;
}

} // namespace

AperiodicityResult aperiodicity_index(const Matrix& a_c, const Matrix& b_c) {
    AperiodicityResult res;
    CycleVectors cycles = enumerate_cycles(a_c, b_c, kCycleBudget);
    res.cycle_length_gcd = cycles.length_gcd;

    LatticeBasis basis = hermite_reduce(cycles.vectors);
    if (basis.has_first)
        res.lattice_basis.push_back({basis.p, basis.q});
    if (basis.r > 0)
        res.lattice_basis.push_back({0, basis.r});
    res.d = static_cast<int>(basis.r);

    // Independent criterion: strict eigenvalue dominance of lambda over the
    // spectrum of A e^{it} + B on the interior points of the uniform
    // 720-subdivision of (0, 2pi). The subdivision passes through 2pi k/d for
    // every d dividing 720, which covers the small periods that occur in
    // practice; a margin of 1e-9 lambda separates dominance from ties.
    res.spectral_agrees = false;
    if (cycles.length_gcd > 0) {
        PerronTriple t = perron_triple(a_c + b_c);
        bool strict = true;
        ComplexMatrix ac = a_c.cast<Complex>();
        ComplexMatrix bc = b_c.cast<Complex>();
        for (int j = 1; j < 720 && strict; ++j) {
            double theta = 2.0 * std::numbers::pi * j / 720.0;
            ComplexMatrix mz = ac * std::exp(Complex(0.0, theta)) + bc;
            Eigen::ComplexEigenSolver<ComplexMatrix> solver(mz, false);
            if (solver.info() != Eigen::Success)
                throw StructureError("eigenvalue computation failed on the sampling grid");
            double worst = solver.eigenvalues().cwiseAbs().maxCoeff();
            if (worst >= t.lambda * (1.0 - 1e-9))
                strict = false;
        }
        res.spectral_agrees = strict;
    }
    return res;
}

namespace {

bool relatively_equal(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

ModelClass unsupported(ModelClass base, std::string reason) {
    base.variant = Variant::Unsupported;
    base.unsupported_reason = std::move(reason);
    return base;
}

bool component_has_cycle(const Matrix& block) {
    if (block.rows() == 1)
        return block(0, 0) > 0.0;
    return true;  // a multi-state SCC always contains a cycle
}

} // namespace

ModelClass classify(const ValidatedModel& model, double tol_eq) {
    ComponentStructure cs = condensation(model);
    ModelClass mc;

    if (cs.components.size() > 2)
        return unsupported(mc, "condensation has " + std::to_string(cs.components.size()) +
                                   " components; only one or two are supported");

    for (size_t j = 0; j < cs.components.size(); ++j)
        if (!component_has_cycle(cs.a_blocks[j] + cs.b_blocks[j]))
            return unsupported(mc, "component " + std::to_string(j + 1) +
                                       " is a single state without a cycle");

    if (cs.components.size() == 1) {
        mc.constants.push_back(spectral_constants(cs.a_blocks[0], cs.b_blocks[0],
                                                  cs.xi_blocks[0], cs.eta_blocks[0]));
        mc.aperiodicity.push_back(aperiodicity_index(cs.a_blocks[0], cs.b_blocks[0]));
        if (mc.aperiodicity[0].cycle_length_gcd != 1)
            return unsupported(mc, "transition matrix is irreducible but periodic (period " +
                                       std::to_string(mc.aperiodicity[0].cycle_length_gcd) + ")");
        mc.variant = Variant::Primitive;
        return mc;
    }

    // Two components. Spectral constants tolerate blocks without initial or
    // final mass here; the communication conditions below decide legality.
    for (size_t j = 0; j < 2; ++j) {
        mc.constants.push_back(spectral_constants(cs.a_blocks[j], cs.b_blocks[j],
                                                  cs.xi_blocks[j], cs.eta_blocks[j],
                                                  /*allow_zero_alpha=*/true));
        mc.aperiodicity.push_back(aperiodicity_index(cs.a_blocks[j], cs.b_blocks[j]));
    }

    bool communicating = cs.coupling_total().size() > 0 && cs.coupling_total().maxCoeff() > 0.0;
    bool xi1 = cs.xi_blocks[0].maxCoeff() > 0.0;
    bool xi2 = cs.xi_blocks[1].maxCoeff() > 0.0;
    bool eta1 = cs.eta_blocks[0].maxCoeff() > 0.0;
    bool eta2 = cs.eta_blocks[1].maxCoeff() > 0.0;

    if (communicating) {
        if (!xi1 || !eta2)
            return unsupported(mc, "communicating model lacks initial mass on the first "
                                       "component or final mass on the second");
    } else {
        if (!(xi1 && eta1 && xi2 && eta2))
            return unsupported(mc, "sum model needs initial and final mass on both components");
    }

    double l1 = mc.constants[0].lambda, l2 = mc.constants[1].lambda;
    bool equipotent = relatively_equal(l1, l2, tol_eq);

    if (!equipotent) {
        int dom = l1 > l2 ? 0 : 1;
        if (cs.a_blocks[dom].maxCoeff() <= 0.0 || cs.b_blocks[dom].maxCoeff() <= 0.0)
            return unsupported(mc, "dominant component " + std::to_string(dom + 1) +
                                       " uses only one letter (degenerate case)");
        if (mc.aperiodicity[dom].cycle_length_gcd != 1)
            return unsupported(mc, "dominant component " + std::to_string(dom + 1) +
                                       " has a periodic transition matrix");
        if (mc.aperiodicity[dom].d != 1)
            return unsupported(mc, "dominant component " + std::to_string(dom + 1) +
                                       " fails the pair aperiodicity condition (d = " +
                                       std::to_string(mc.aperiodicity[dom].d) + ")");
        mc.dominant = dom + 1;
        mc.variant = communicating ? Variant::DominantCommunicating : Variant::DominantSum;
        return mc;
    }

    for (int j = 0; j < 2; ++j) {
        if (mc.aperiodicity[j].cycle_length_gcd != 1)
            return unsupported(mc, "equipotent component " + std::to_string(j + 1) +
                                       " has a periodic transition matrix");
        if (mc.aperiodicity[j].d != 1)
            return unsupported(mc, "equipotent component " + std::to_string(j + 1) +
                                       " fails the pair aperiodicity condition (d = " +
                                       std::to_string(mc.aperiodicity[j].d) + ")");
    }

    bool beta_eq = relatively_equal(mc.constants[0].beta, mc.constants[1].beta, tol_eq);
    bool gamma_eq = relatively_equal(mc.constants[0].gamma, mc.constants[1].gamma, tol_eq);
    if (!beta_eq)
        mc.subcase = EquipotentSubcase::BetaDiffer;
    else if (!gamma_eq)
        mc.subcase = EquipotentSubcase::BetaEqualGammaDiffer;
    else
        mc.subcase = EquipotentSubcase::BetaGammaEqual;
    mc.variant = communicating ? Variant::EquipotentCommunicating : Variant::EquipotentSum;
    return mc;
}

} // namespace symstat
