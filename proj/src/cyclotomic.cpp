#include "iwasawa/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "iwasawa/error.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwasawa {

namespace {

std::vector<long> compute_cyclotomic(int m) {
    std::vector<long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (i64 d : divisors(m)) {
        if (d == m) continue;
        const auto& den = cyclotomic_polynomial(static_cast<int>(d));
        int dd = static_cast<int>(den.size()) - 1;
        int dn = static_cast<int>(num.size()) - 1;
        std::vector<long> q(dn - dd + 1, 0);
        for (int k = dn; k >= dd; --k) {
            long c = num[k];
            q[k - dd] = c;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
        }
        num = q;
    }
    return num;
}

void reduce_in_place(int m, std::vector<mpq_class>& a) {
    const auto& phi = cyclotomic_polynomial(m);
    const int deg = static_cast<int>(phi.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= deg; --k) {
        if (sgn(a[k]) == 0) continue;
        mpq_class c = a[k];
        for (int j = 0; j <= deg; ++j)
            if (phi[j] != 0) a[k - deg + j] -= c * phi[j];
    }
    a.resize(deg);
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int m) {
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    std::vector<long> poly = m == 1 ? std::vector<long>{-1, 1} : compute_cyclotomic(m);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(m, std::move(poly)).first->second;
}

CycloElement::CycloElement(int m) : m_(m), c_(static_cast<std::size_t>(euler_phi(m)), mpq_class(0)) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic modulus must be positive");
}

CycloElement CycloElement::rational(int m, const mpq_class& value) {
    CycloElement x(m);
    x.c_[0] = value;
    x.c_[0].canonicalize();
    return x;
}

CycloElement CycloElement::root_power(int m, long long k) {
    std::vector<mpq_class> v(m, mpq_class(0));
    v[mod_norm(k, m)] = 1;
    return from_exponent_vector(m, v);
}

CycloElement CycloElement::from_exponent_vector(int m, const std::vector<mpq_class>& c) {
    CycloElement x(m);
    std::vector<mpq_class> a = c;
    if (static_cast<int>(a.size()) < static_cast<int>(x.c_.size())) a.resize(x.c_.size(), mpq_class(0));
    reduce_in_place(m, a);
    x.c_ = std::move(a);
    return x;
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
    CycloElement r = *this;
    r += o;
    return r;
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
    if (m_ != o.m_) throw Error(ErrorCode::SpecMismatch, "cyclotomic moduli differ");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycloElement CycloElement::operator-(const CycloElement& o) const {
    if (m_ != o.m_) throw Error(ErrorCode::SpecMismatch, "cyclotomic moduli differ");
    CycloElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycloElement CycloElement::operator-() const {
    CycloElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycloElement CycloElement::operator*(const CycloElement& o) const {
    if (m_ != o.m_) throw Error(ErrorCode::SpecMismatch, "cyclotomic moduli differ");
    std::vector<mpq_class> prod(2 * c_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (sgn(o.c_[j]) != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    CycloElement r(m_);
    reduce_in_place(m_, prod);
    r.c_ = std::move(prod);
    return r;
}

CycloElement CycloElement::operator*(const mpq_class& s) const {
    CycloElement r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

CycloElement CycloElement::galois(long long a) const {
    if (std::gcd(mod_norm(a, m_), static_cast<i64>(m_)) != 1)
        throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not a unit mod " + std::to_string(m_));
    std::vector<mpq_class> v(m_, mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) v[mod_norm(a * static_cast<long long>(i), m_)] += c_[i];
    return from_exponent_vector(m_, v);
}

CycloElement CycloElement::lift(int M) const {
    if (M % m_ != 0) throw Error(ErrorCode::InvalidArgument, "lift target must be a multiple of the modulus");
    std::vector<mpq_class> v(M, mpq_class(0));
    const int step = M / m_;
    for (std::size_t i = 0; i < c_.size(); ++i) v[static_cast<std::size_t>(i) * step] = c_[i];
    return from_exponent_vector(M, v);
}

bool CycloElement::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool CycloElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

mpq_class CycloElement::rational_value() const {
    if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "value is not rational");
    return c_[0];
}

int CycloElement::compare(const CycloElement& o) const {
    if (m_ != o.m_) return m_ < o.m_ ? -1 : 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::string CycloElement::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        mpq_class c = c_[i];
        if (!first) out << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) out << "-";
        mpq_class a = abs(c);
        bool unit = (a == 1);
        if (i == 0 || !unit) out << a.get_str();
        if (i > 0) {
            if (!unit) out << "*";
            out << "z" << m_;
            if (i > 1) out << "^" << i;
        }
        first = false;
    }
    return first ? "0" : out.str();
}

}  // namespace iwasawa
