#include "omlkit/hilbert.hpp"

#include <algorithm>
#include <sstream>

#include "omlkit/rng.hpp"

namespace oml {

namespace {

// In-place Gauss-Jordan reduction to reduced row-echelon form; returns the
// pivot column of each nonzero row and erases zero rows.
std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty())
        return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[row], m[pivot]);
        Rat inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j)
            m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            Rat factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] -= factor * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(row), m.end());
    return pivots;
}

void require_same_dim(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw DimensionMismatch("subspaces live in Q^" + std::to_string(u.ambient_dim()) +
                                " and Q^" + std::to_string(v.ambient_dim()));
}

} // namespace

Subspace::Subspace(int ambient_dim, RatMatrix generators) : n_(ambient_dim) {
    if (ambient_dim < 1)
        throw DimensionMismatch("ambient dimension must be positive");
    for (const auto& row : generators)
        if (static_cast<int>(row.size()) != ambient_dim)
            throw DimensionMismatch("generator length does not match the ambient dimension");
    basis_ = std::move(generators);
    rref(basis_);
}

Subspace Subspace::full_space(int n) {
    RatMatrix rows(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i][i] = 1;
    return Subspace(n, std::move(rows));
}

std::string Subspace::to_string() const {
    std::ostringstream out;
    out << "span{";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < basis_[i].size(); ++j)
            out << (j ? " " : "") << basis_[i][j].get_str();
        out << "]";
    }
    out << "} in Q^" << n_;
    return out.str();
}

Subspace join(const Subspace& u, const Subspace& v) {
    require_same_dim(u, v);
    RatMatrix stacked = u.basis();
    stacked.insert(stacked.end(), v.basis().begin(), v.basis().end());
    return Subspace(u.ambient_dim(), std::move(stacked));
}

// Solution space of B y = 0 where the rows of `rows` are the equations.
static RatMatrix nullspace(int n, RatMatrix rows) {
    std::vector<int> pivots = rref(rows);
    std::vector<std::uint8_t> is_pivot(static_cast<std::size_t>(n), 0);
    for (int col : pivots)
        is_pivot[static_cast<std::size_t>(col)] = 1;
    RatMatrix out;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)])
            continue;
        std::vector<Rat> vec(static_cast<std::size_t>(n), 0);
        vec[static_cast<std::size_t>(free_col)] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r)
            vec[static_cast<std::size_t>(pivots[r])] = -rows[r][static_cast<std::size_t>(free_col)];
        out.push_back(std::move(vec));
    }
    return out;
}

Subspace ortho(const Subspace& u) {
    return Subspace(u.ambient_dim(), nullspace(u.ambient_dim(), u.basis()));
}

// Zassenhaus: reduce [U|U; V|0]; rows whose left half vanished span the
// intersection in the right half.
Subspace meet(const Subspace& u, const Subspace& v) {
    require_same_dim(u, v);
    const std::size_t n = static_cast<std::size_t>(u.ambient_dim());
    RatMatrix wide;
    for (const auto& row : u.basis()) {
        std::vector<Rat> w(2 * n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            w[j] = row[j];
            w[n + j] = row[j];
        }
        wide.push_back(std::move(w));
    }
    for (const auto& row : v.basis()) {
        std::vector<Rat> w(2 * n, 0);
        for (std::size_t j = 0; j < n; ++j)
            w[j] = row[j];
        wide.push_back(std::move(w));
    }
    rref(wide);
    RatMatrix inter;
    for (const auto& row : wide) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            left_zero = row[j] == 0;
        if (!left_zero)
            continue;
        inter.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
    }
    return Subspace(u.ambient_dim(), std::move(inter));
}

bool leq(const Subspace& u, const Subspace& v) {
    require_same_dim(u, v);
    return meet(u, v) == u;
}

Subspace random_subspace(int n, std::uint64_t seed) {
    if (n < 1)
        throw DimensionMismatch("ambient dimension must be positive");
    SplitMix64 g(seed);
    const std::uint64_t rows = g.below(static_cast<std::uint64_t>(n) + 1);
    RatMatrix m;
    for (std::uint64_t r = 0; r < rows; ++r) {
        std::vector<Rat> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            row.emplace_back(static_cast<long>(g.below(7)) - 3);
        m.push_back(std::move(row));
    }
    return Subspace(n, std::move(m));
}

Subspace evaluate_subspace(int n, const Term& t,
                           const std::map<std::string, Subspace>& assignment) {
    switch (t.kind()) {
    case TermKind::Variable: {
        auto it = assignment.find(t.name());
        if (it == assignment.end())
            throw Error("unassigned variable '" + t.name() + "'");
        return it->second;
    }
    case TermKind::Zero:
        return Subspace::zero_space(n);
    case TermKind::One:
        return Subspace::full_space(n);
    case TermKind::Complement:
        return ortho(evaluate_subspace(n, t.child(), assignment));
    case TermKind::Meet:
        return meet(evaluate_subspace(n, t.left(), assignment),
                    evaluate_subspace(n, t.right(), assignment));
    case TermKind::Join:
        return join(evaluate_subspace(n, t.left(), assignment),
                    evaluate_subspace(n, t.right(), assignment));
    default:
        return evaluate_subspace(n, expand(t), assignment);
    }
}

SubspaceCheckResult check_equation_random(int n, const Term& lhs, Rel rel, const Term& rhs,
                                          std::uint64_t trials, std::uint64_t seed) {
    std::vector<std::string> vars = variables(lhs);
    for (const std::string& v : variables(rhs))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);

    Term lhs_x = expand(lhs);
    Term rhs_x = expand(rhs);
    SubspaceCheckResult result;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::map<std::string, Subspace> assignment;
        const std::uint64_t trial_seed = derive_seed(seed, t);
        for (std::size_t i = 0; i < vars.size(); ++i)
            assignment.emplace(vars[i], random_subspace(n, derive_seed(trial_seed, i)));
        Subspace left = evaluate_subspace(n, lhs_x, assignment);
        Subspace right = evaluate_subspace(n, rhs_x, assignment);
        bool ok = rel == Rel::Equal ? left == right : leq(left, right);
        if (!ok) {
            result.holds = false;
            result.witness = std::move(assignment);
            result.trials_checked = t + 1;
            return result;
        }
    }
    result.trials_checked = trials;
    return result;
}

} // namespace oml
