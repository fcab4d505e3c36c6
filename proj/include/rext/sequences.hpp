#pragma once

// Gap sequences: the oscillator levels removed by the Darboux chain.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rext {

class SequenceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Decomposition {
    std::vector<int> sing;        // {1, 3, ..., 2s+1}
    std::vector<int> sing_adler;  // odd pairs {2k+1, 2k+3}
    std::vector<int> adler;       // even/odd adjacent pairs
};

class GapSequence {
public:
    // Structural validation; throws SequenceError.
    static GapSequence validate(std::span<const int> raw);
    static GapSequence parse(const std::string& text);

    const std::vector<int>& elements() const { return elements_; }
    const Decomposition& decomposition() const { return decomposition_; }
    int l_number() const { return l_number_; }
    int size() const { return static_cast<int>(elements_.size()); }
    int last() const { return elements_.back(); }
    bool contains(int n) const;

    std::string to_string() const;

    friend bool operator==(const GapSequence& a, const GapSequence& b) { return a.elements_ == b.elements_; }

private:
    std::vector<int> elements_;
    Decomposition decomposition_;
    int l_number_ = 0;
};

// Strictly increasing naturals >= 1; the only check applied before the
// exact regularity certificate (which also accepts structurally invalid input).
std::vector<int> parse_levels(const std::string& text);
void check_levels(std::span<const int> levels);

int l_number(const GapSequence& sigma);

struct SpectrumView {
    std::vector<double> levels;  // E = n + 1/2
    std::vector<int> quanta;     // the oscillator n behind each level
};

SpectrumView spectrum(const GapSequence& sigma, int count);

struct WellPrediction {
    int wells;
    bool heuristic;  // false only for the {1, 2m, 2m+1} family
};

// nullopt when the spectrum has no shifted levels below its equidistant tail.
std::optional<WellPrediction> predicted_wells(const GapSequence& sigma);

}  // namespace rext
