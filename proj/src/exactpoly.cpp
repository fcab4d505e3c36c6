#include "rext/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rext {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    // Decimal literal with optional fraction and exponent, parsed exactly.
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    int scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational literal '" + text + "'");
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw std::invalid_argument("malformed rational literal '" + text + "'");
        std::size_t used = 0;
        try {
            exponent = std::stol(s.substr(pos + 1), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed exponent in '" + text + "'");
        }
        if (pos + 1 + used != s.size()) throw std::invalid_argument("malformed exponent in '" + text + "'");
    }
    Integer mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    long shift = exponent - scale;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational q = shift >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long double to_long_double(const Rational& q) {
    mpf_class f(q, 192);
    double hi = f.get_d();
    mpf_class rest(f - hi, 192);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& UniPoly::leading() const {
    if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

int UniPoly::order_at_zero() const {
    if (is_zero()) throw std::domain_error("order at zero of the zero polynomial");
    int k = 0;
    while (coeffs_[static_cast<std::size_t>(k)] == 0) ++k;
    return k;
}

UniPoly UniPoly::derivative() const {
    if (degree() < 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::derivative(int times) const {
    UniPoly p = *this;
    for (int i = 0; i < times; ++i) p = p.derivative();
    return p;
}

UniPoly UniPoly::shifted(const Rational& a) const {
    // Taylor shift by repeated synthetic division.
    std::vector<Rational> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) c[k - 1] += a * c[k];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::reflected() const {
    std::vector<Rational> c = coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::divide_by_x_power(int k) const {
    if (k == 0 || is_zero()) return *this;
    if (order_at_zero() < k) throw std::domain_error("x^k does not divide polynomial");
    return UniPoly(std::vector<Rational>(coeffs_.begin() + k, coeffs_.end()));
}

UniPoly UniPoly::even_part_in_square() const {
    if (parity() != 1) throw std::domain_error("polynomial is not even");
    std::vector<Rational> c;
    for (std::size_t k = 0; k < coeffs_.size(); k += 2) c.push_back(coeffs_[k]);
    return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    return *this * Rational(1 / leading());
}

Rational UniPoly::operator()(const Rational& v) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
    return acc;
}

double UniPoly::eval(double v) const { return static_cast<double>(eval(static_cast<long double>(v))); }

long double UniPoly::eval(long double v) const {
    long double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + to_long_double(*it);
    return acc;
}

std::complex<double> UniPoly::eval(std::complex<double> v) const {
    std::complex<double> acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + it->get_d();
    return acc;
}

int UniPoly::sign_at(const Rational& a) const { return sgn((*this)(a)); }

int UniPoly::sign_right_of(const Rational& a) const {
    if (is_zero()) return 0;
    if (int s = sign_at(a); s != 0) return s;
    const UniPoly t = shifted(a);
    for (const auto& c : t.coeffs_)
        if (c != 0) return sgn(c);
    return 0;
}

int UniPoly::parity() const {
    bool has_even = false, has_odd = false;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        (k % 2 == 0 ? has_even : has_odd) = true;
    }
    if (has_even && has_odd) return 0;
    return has_odd ? -1 : 1;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
}

UniPoly operator-(const UniPoly& a) { return a * Rational(-1); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    Rational t;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
            c[i + j] += t;
        }
    }
    return UniPoly(std::move(c));
}

std::string UniPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rational mag = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mag != 1 || k == 0) os << mag.get_str();
        if (k > 0) os << var;
        if (k > 1) os << '^' << k;
        first = false;
    }
    return os.str();
}

DivMod divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const Rational inv_lead = 1 / b.leading();
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        const Rational& top = rem[static_cast<std::size_t>(k)];
        if (top == 0) continue;
        Rational f = top * inv_lead;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
        quo[static_cast<std::size_t>(k - db)] = std::move(f);
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly u = a.monic(), v = b.monic();
    while (!v.is_zero()) {
        UniPoly r = divmod(u, v).remainder.monic();
        u = std::move(v);
        v = std::move(r);
    }
    return u;
}

UniPoly pow(const UniPoly& p, int e) {
    UniPoly r = UniPoly::constant(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

UniPoly determinant(std::vector<std::vector<UniPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return UniPoly::constant(1);
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    int sign = 1;
    UniPoly prev = UniPoly::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return {};
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = UniPoly{};
        }
        prev = m[k][k];
    }
    UniPoly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

UniPoly wronskian(std::span<const UniPoly> polys) {
    if (polys.empty()) throw std::invalid_argument("wronskian of an empty sequence");
    const std::size_t n = polys.size();
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n));
    for (std::size_t j = 0; j < n; ++j) {
        UniPoly d = polys[j];
        for (std::size_t i = 0; i < n; ++i) {
            m[i][j] = d;
            d = d.derivative();
        }
    }
    return determinant(std::move(m));
}

// ---------------------------------------------------------------- Sturm

Rational root_bound(const UniPoly& p) {
    if (p.degree() < 1) return 1;
    Rational best = 0;
    const Rational lead = abs(p.leading());
    for (int k = 0; k < p.degree(); ++k) best = std::max(best, Rational(abs(p.coeff(k)) / lead));
    return best + 1;
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
    std::vector<UniPoly> chain{p};
    UniPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    for (;;) {
        UniPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
        if (r.is_zero()) break;
        chain.push_back(r * Rational(-1 / abs(r.leading())));
    }
    return chain;
}

namespace {

int variations(const std::vector<UniPoly>& chain, const std::optional<Rational>& at) {
    int count = 0, last = 0;
    for (const auto& q : chain) {
        int s = at ? q.sign_right_of(*at) : sgn(q.leading());
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

int sturm_count(const UniPoly& p, const Rational& lo, const std::optional<Rational>& hi) {
    if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
    if (hi && *hi <= lo) return 0;
    const auto chain = sturm_chain(p);
    return variations(chain, lo) - variations(chain, hi);
}

std::vector<RootInterval> isolate_roots(const UniPoly& p, const Rational& lo,
                                        const std::optional<Rational>& hi) {
    if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
    const auto chain = sturm_chain(p);
    Rational top = hi ? *hi : root_bound(p);
    // A finite caller-supplied upper end may itself be a root; keep it as given.
    std::vector<RootInterval> out;
    std::vector<std::pair<RootInterval, int>> stack;
    const int total = variations(chain, lo) - variations(chain, top);
    if (total > 0) stack.push_back({{lo, top}, total});
    while (!stack.empty()) {
        auto [iv, count] = stack.back();
        stack.pop_back();
        if (count == 1) {
            out.push_back(iv);
            continue;
        }
        // Split point must not be a root so every interval end stays root-free.
        Rational mid = (iv.lo + iv.hi) / 2;
        for (int k = 3; p(mid) == 0; ++k) mid = iv.lo + (iv.hi - iv.lo) / k;
        mid.canonicalize();
        const int vl = variations(chain, iv.lo), vm = variations(chain, mid), vh = variations(chain, iv.hi);
        if (vm - vh > 0) stack.push_back({{mid, iv.hi}, vm - vh});
        if (vl - vm > 0) stack.push_back({{iv.lo, mid}, vl - vm});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

// ---------------------------------------------------------------- RationalFunction

NumericPoly::NumericPoly(const UniPoly& p) {
    c_.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c_.push_back(to_long_double(q));
}

long double NumericPoly::operator()(long double x) const {
    long double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<long double> NumericPoly::operator()(std::complex<long double> x) const {
    std::complex<long double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalFunction::RationalFunction(UniPoly num, UniPoly den)
    : num_(std::move(num)), den_(std::move(den)), fast_num_(num_), fast_den_(den_) {}

RationalFunction::RationalFunction(const UniPoly& p) : RationalFunction(p, UniPoly::constant(1)) {}

RationalFunction rf_simplify(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) return RationalFunction();
    const UniPoly g = gcd(num, den);
    UniPoly n = exact_div(num, g), d = exact_div(den, g);
    const Rational scale = 1 / d.leading();
    return RationalFunction(n * scale, d * scale);
}

RationalFunction RationalFunction::derivative() const {
    return rf_simplify(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RationalFunction::operator()(const Rational& v) const {
    Rational d = den_(v);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_(v) / d;
}

double RationalFunction::eval(double v) const { return static_cast<double>(eval(static_cast<long double>(v))); }

long double RationalFunction::eval(long double v) const { return fast_num_(v) / fast_den_(v); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return rf_simplify(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return rf_simplify(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return rf_simplify(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw std::domain_error("division by the zero rational function");
    return rf_simplify(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------- BiPoly

void BiPoly::add_term(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BiPoly BiPoly::separable(const UniPoly& px, const UniPoly& py) {
    BiPoly b;
    for (int i = 0; i <= px.degree(); ++i) {
        if (px.coeff(i) == 0) continue;
        for (int j = 0; j <= py.degree(); ++j) b.add_term({i, j}, px.coeff(i) * py.coeff(j));
    }
    return b;
}

Rational BiPoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::degree_x() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
}

int BiPoly::degree_y() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
}

BiPoly BiPoly::swapped() const {
    BiPoly b;
    for (const auto& [k, c] : terms_) b.terms_.emplace(Key{k.second, k.first}, c);
    return b;
}

BiPoly BiPoly::reflected_x() const {
    BiPoly b = *this;
    for (auto& [k, c] : b.terms_)
        if (k.first % 2 != 0) c = -c;
    return b;
}

Rational BiPoly::operator()(const Rational& x, const Rational& y) const {
    const int dx = degree_x(), dy = degree_y();
    std::vector<Rational> px(static_cast<std::size_t>(std::max(dx, 0)) + 1), py(static_cast<std::size_t>(std::max(dy, 0)) + 1);
    px[0] = py[0] = 1;
    for (std::size_t i = 1; i < px.size(); ++i) px[i] = px[i - 1] * x;
    for (std::size_t j = 1; j < py.size(); ++j) py[j] = py[j - 1] * y;
    Rational acc = 0;
    for (const auto& [k, c] : terms_) acc += c * px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)];
    return acc;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

BiPoly& BiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

std::optional<BiPoly> BiPoly::divide_separable(const UniPoly& px, const UniPoly& py) const {
    if (px.is_zero() || py.is_zero()) throw std::domain_error("division by the zero polynomial");
    // Divide each y-column by px(x), then each x-row of the quotient by py(y).
    std::map<int, std::vector<Rational>> columns;
    for (const auto& [k, c] : terms_) {
        auto& col = columns[k.second];
        if (col.size() <= static_cast<std::size_t>(k.first)) col.resize(static_cast<std::size_t>(k.first) + 1);
        col[static_cast<std::size_t>(k.first)] = c;
    }
    std::map<int, std::vector<Rational>> rows;
    for (auto& [j, col] : columns) {
        auto [q, r] = divmod(UniPoly(std::move(col)), px);
        if (!r.is_zero()) return std::nullopt;
        for (int i = 0; i <= q.degree(); ++i) {
            auto& row = rows[i];
            if (row.size() <= static_cast<std::size_t>(j)) row.resize(static_cast<std::size_t>(j) + 1);
            row[static_cast<std::size_t>(j)] = q.coeff(i);
        }
    }
    BiPoly out;
    for (auto& [i, row] : rows) {
        auto [q, r] = divmod(UniPoly(std::move(row)), py);
        if (!r.is_zero()) return std::nullopt;
        for (int j = 0; j <= q.degree(); ++j) out.add_term({i, j}, q.coeff(j));
    }
    return out;
}

std::vector<std::vector<long double>> BiPoly::dense_long_double() const {
    const int dx = degree_x(), dy = degree_y();
    if (dx < 0) return {};
    std::vector<std::vector<long double>> t(static_cast<std::size_t>(dx) + 1,
                                            std::vector<long double>(static_cast<std::size_t>(dy) + 1, 0.0L));
    for (const auto& [k, c] : terms_) t[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(k.second)] = to_long_double(c);
    return t;
}

// ---------------------------------------------------------------- serialization

std::vector<std::string> serialize(const UniPoly& p) {
    std::vector<std::string> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(to_string(c));
    return out;
}

UniPoly deserialize_poly(std::span<const std::string> coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(parse_rational(s));
    return UniPoly(std::move(c));
}

}  // namespace rext
