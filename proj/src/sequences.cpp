#include "rext/sequences.hpp"

#include <algorithm>
#include <sstream>

namespace rext {

namespace {

bool is_odd(int n) { return n % 2 != 0; }

// Pairs up the remaining levels: an odd level takes its even successor
// (Adler pair) or the next odd level (pair inside the singular spectrum);
// an even level can only be reached as the smallest open element when its
// odd predecessor is absent, so it takes its odd successor.
bool pair_up(const std::vector<int>& rest, std::vector<bool>& used, Decomposition& out) {
    auto first = std::find(used.begin(), used.end(), false);
    if (first == used.end()) return true;
    const auto i = static_cast<std::size_t>(first - used.begin());
    const int e = rest[i];
    used[i] = true;

    auto try_partner = [&](int partner, std::vector<int>& bucket) {
        auto it = std::find(rest.begin(), rest.end(), partner);
        if (it == rest.end()) return false;
        const auto j = static_cast<std::size_t>(it - rest.begin());
        if (used[j]) return false;
        used[j] = true;
        bucket.push_back(e);
        bucket.push_back(partner);
        if (pair_up(rest, used, out)) return true;
        bucket.resize(bucket.size() - 2);
        used[j] = false;
        return false;
    };

    bool ok = false;
    if (is_odd(e)) {
        ok = try_partner(e + 1, out.adler) || try_partner(e + 2, out.sing_adler);
    } else {
        ok = try_partner(e + 1, out.adler);
    }
    if (!ok) used[i] = false;
    return ok;
}

}  // namespace

void check_levels(std::span<const int> levels) {
    if (levels.empty()) throw SequenceError("gap sequence is empty");
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < 1)
            throw SequenceError("gap sequence element " + std::to_string(levels[k]) +
                                " is not a natural >= 1 (sequences starting at 0 are rejected; shift them down instead)");
        if (k > 0 && levels[k] <= levels[k - 1]) throw SequenceError("gap sequence is not strictly increasing");
    }
}

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw SequenceError("malformed gap sequence '" + text + "'");
        }
        while (used < item.size() && item[used] == ' ') ++used;
        if (used != item.size()) throw SequenceError("malformed gap sequence '" + text + "'");
        out.push_back(v);
    }
    check_levels(out);
    return out;
}

GapSequence GapSequence::validate(std::span<const int> raw) {
    check_levels(raw);
    std::vector<int> elems(raw.begin(), raw.end());

    for (int e : elems) {
        if (is_odd(e)) continue;
        const bool has_partner = std::binary_search(elems.begin(), elems.end(), e - 1) ||
                                 std::binary_search(elems.begin(), elems.end(), e + 1);
        if (!has_partner)
            throw SequenceError("even level " + std::to_string(e) + " has no adjacent odd partner in the gap sequence");
    }

    int odd = 0, even = 0;
    for (int e : elems) (is_odd(e) ? odd : even)++;
    if (odd < even) throw SequenceError("gap sequence has more even than odd levels (l_N < 0)");

    int run = 0;
    while (std::binary_search(elems.begin(), elems.end(), 2 * run + 1)) ++run;

    for (int s = run; s >= 0; --s) {
        Decomposition d;
        std::vector<int> rest;
        for (int e : elems) {
            if (is_odd(e) && e <= 2 * s - 1)
                d.sing.push_back(e);
            else
                rest.push_back(e);
        }
        std::vector<bool> used(rest.size(), false);
        if (!pair_up(rest, used, d)) continue;
        std::sort(d.sing_adler.begin(), d.sing_adler.end());
        std::sort(d.adler.begin(), d.adler.end());

        GapSequence g;
        g.elements_ = std::move(elems);
        g.decomposition_ = std::move(d);
        g.l_number_ = odd - even;
        return g;
    }
    throw SequenceError("gap sequence cannot be split into a singular run and admissible pairs");
}

GapSequence GapSequence::parse(const std::string& text) {
    const auto levels = parse_levels(text);
    return validate(levels);
}

bool GapSequence::contains(int n) const { return std::binary_search(elements_.begin(), elements_.end(), n); }

std::string GapSequence::to_string() const {
    std::string s;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(elements_[k]);
    }
    return s;
}

int l_number(const GapSequence& sigma) {
    int l = 0;
    for (int e : sigma.elements()) l += is_odd(e) ? 1 : -1;
    return l;
}

SpectrumView spectrum(const GapSequence& sigma, int count) {
    SpectrumView v;
    for (int n = 1; static_cast<int>(v.quanta.size()) < count; n += 2) {
        if (sigma.contains(n)) continue;
        v.quanta.push_back(n);
        v.levels.push_back(n + 0.5);
    }
    return v;
}

std::optional<WellPrediction> predicted_wells(const GapSequence& sigma) {
    const auto& e = sigma.elements();
    if (e.size() == 3 && e[0] == 1 && e[1] % 2 == 0 && e[1] >= 4 && e[2] == e[1] + 1)
        return WellPrediction{e[1] / 2 - 1, false};

    const auto view = spectrum(sigma, (sigma.last() + 1) / 2 + 2);
    int below = 0;
    for (std::size_t k = 0; k + 1 < view.quanta.size(); ++k)
        if (view.quanta[k + 1] - view.quanta[k] > 2) below = static_cast<int>(k) + 1;
    if (below == 0) return std::nullopt;
    return WellPrediction{below, true};
}

}  // namespace rext
