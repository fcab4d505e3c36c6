#pragma once

// Probabilistic Hermite polynomials and the seed Wronskians built from them.

#include "rext/exactpoly.hpp"
#include "rext/sequences.hpp"

#include <map>
#include <span>
#include <vector>

namespace rext {

inline constexpr int kDefaultHermiteMax = 64;

class HermiteTable {
public:
    explicit HermiteTable(int max_degree = kDefaultHermiteMax);
    int max_degree() const { return static_cast<int>(table_.size()) - 1; }
    const UniPoly& operator[](int n) const;

private:
    std::vector<UniPoly> table_;
};

// He_n from the shared default table (n <= kDefaultHermiteMax).
const UniPoly& he(int n);

Integer factorial(int n);

// Seed data for a level set. Built from raw levels so that structurally
// invalid sequences can still be certified.
class SeedSet {
public:
    explicit SeedSet(std::span<const int> levels);
    explicit SeedSet(const GapSequence& sigma) : SeedSet(std::span<const int>(sigma.elements())) {}

    const std::vector<int>& levels() const { return levels_; }
    int l_number() const { return l_number_; }
    // Wr[He_sigma](x)
    const UniPoly& what() const { return what_; }
    int ord0() const { return ord0_; }
    int parity() const { return parity_; }
    bool contains(int n) const;

    // Wr[He_sigma, He_n](x); zero for n in sigma. Levels 0..last+1 are
    // tabulated at construction, others computed on request.
    UniPoly augmented(int n) const;

    // Polynomials c_r(x) with Wr[He_sigma, f] = sum_r c_r(x) f^{(r)}(x),
    // r = 0..|sigma| (cofactor expansion along the last column).
    const std::vector<UniPoly>& cofactors() const { return cofactors_; }

private:
    UniPoly compute_augmented(int n) const;

    std::vector<int> levels_;
    int l_number_ = 0;
    UniPoly what_;
    int ord0_ = 0;
    int parity_ = 0;
    std::map<int, UniPoly> aug_;
    std::vector<UniPoly> cofactors_;
};

struct NormalizationData {
    int n = 0;
    Rational nsq;     // prod_j (n - sigma_j)^{-1}; 0 when n is in sigma
    Rational a;       // nsq / (prod_{m in sigma} m! * n!)
    bool physical = false;  // n odd, not in sigma, nsq > 0
};

NormalizationData norm_data(std::span<const int> levels, int n);
inline NormalizationData norm_data(const GapSequence& sigma, int n) {
    return norm_data(std::span<const int>(sigma.elements()), n);
}

}  // namespace rext
