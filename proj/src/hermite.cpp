#include "rext/hermite.hpp"

#include <algorithm>

namespace rext {

HermiteTable::HermiteTable(int max_degree) {
    if (max_degree < 1) max_degree = 1;
    table_.reserve(static_cast<std::size_t>(max_degree) + 1);
    table_.push_back(UniPoly::constant(1));
    table_.push_back(UniPoly::x());
    for (int n = 1; n < max_degree; ++n)
        table_.push_back(UniPoly::x() * table_[static_cast<std::size_t>(n)] -
                         table_[static_cast<std::size_t>(n - 1)] * Rational(n));
}

const UniPoly& HermiteTable::operator[](int n) const {
    if (n < 0 || n > max_degree())
        throw std::out_of_range("Hermite degree " + std::to_string(n) + " outside table (max " +
                                std::to_string(max_degree()) + ")");
    return table_[static_cast<std::size_t>(n)];
}

const UniPoly& he(int n) {
    static const HermiteTable table(kDefaultHermiteMax);
    return table[n];
}

Integer factorial(int n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

SeedSet::SeedSet(std::span<const int> levels) : levels_(levels.begin(), levels.end()) {
    check_levels(levels_);
    for (int e : levels_) l_number_ += e % 2 ? 1 : -1;

    std::vector<UniPoly> seeds;
    for (int e : levels_) seeds.push_back(he(e));
    what_ = wronskian(seeds);
    if (what_.is_zero()) throw std::logic_error("seed Wronskian vanishes identically");
    ord0_ = what_.order_at_zero();
    parity_ = what_.parity();
    if (parity_ == 0) throw std::logic_error("seed Wronskian has no definite parity");

    // Cofactors of the last column of the (N+1)x(N+1) Wronskian matrix.
    const int n = static_cast<int>(levels_.size());
    std::vector<std::vector<UniPoly>> derivs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        UniPoly d = seeds[static_cast<std::size_t>(j)];
        for (int r = 0; r <= n; ++r) {
            derivs[static_cast<std::size_t>(j)].push_back(d);
            d = d.derivative();
        }
    }
    for (int r = 0; r <= n; ++r) {
        std::vector<std::vector<UniPoly>> minor;
        for (int row = 0; row <= n; ++row) {
            if (row == r) continue;
            std::vector<UniPoly> line;
            for (int j = 0; j < n; ++j) line.push_back(derivs[static_cast<std::size_t>(j)][static_cast<std::size_t>(row)]);
            minor.push_back(std::move(line));
        }
        UniPoly c = determinant(std::move(minor));
        cofactors_.push_back((r + n) % 2 == 0 ? c : -c);
    }

    for (int k = 0; k <= levels_.back() + 1; ++k) aug_.emplace(k, compute_augmented(k));
}

bool SeedSet::contains(int n) const { return std::binary_search(levels_.begin(), levels_.end(), n); }

UniPoly SeedSet::compute_augmented(int n) const {
    if (contains(n)) return {};
    UniPoly acc;
    UniPoly d = he(n);
    for (const auto& c : cofactors_) {
        if (d.is_zero()) break;
        acc += c * d;
        d = d.derivative();
    }
    return acc;
}

UniPoly SeedSet::augmented(int n) const {
    if (n < 0) throw std::out_of_range("negative oscillator level");
    if (auto it = aug_.find(n); it != aug_.end()) return it->second;
    return compute_augmented(n);
}

NormalizationData norm_data(std::span<const int> levels, int n) {
    NormalizationData d;
    d.n = n;
    if (std::binary_search(levels.begin(), levels.end(), n)) {
        d.nsq = 0;
        d.a = 0;
        return d;
    }
    Integer prod = 1;
    Integer fact_prod = factorial(n);
    for (int s : levels) {
        prod *= (n - s);
        fact_prod *= factorial(s);
    }
    d.nsq = Rational(1) / Rational(prod);
    d.nsq.canonicalize();
    d.a = d.nsq / Rational(fact_prod);
    d.a.canonicalize();
    d.physical = n % 2 != 0 && d.nsq > 0;
    return d;
}

}  // namespace rext
