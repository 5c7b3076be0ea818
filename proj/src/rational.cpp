#include "slopegap/rational.hpp"

#include "slopegap/error.hpp"

#include <climits>
#include <string>

namespace slopegap {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto strip = [](std::string& t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        std::size_t i = 0;
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        t.erase(0, i);
    };
    strip(s);
    if (s.empty()) throw InputError("empty rational");
    try {
        if (auto dot = s.find('.'); dot != std::string::npos) {
            std::string whole = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            bool neg = !whole.empty() && whole[0] == '-';
            if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
            if (whole.empty()) whole = "0";
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
                whole.find_first_not_of("0123456789") != std::string::npos)
                throw InputError("malformed decimal '" + s + "'");
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            Rational q(mpz_class(whole + frac), den);
            q.canonicalize();
            return neg ? Rational(-q) : q;
        }
        if (s.find_first_not_of("+-0123456789/") != std::string::npos)
            throw InputError("malformed rational '" + s + "'");
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        Rational q(s);
        if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational '" + s + "'");
    }
}

long double to_long_double(const Rational& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p())
        return static_cast<long double>(num.get_si()) / static_cast<long double>(den.get_si());
    return static_cast<long double>(q.get_d());
}

Rational floor(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

std::int64_t floor_int(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!f.fits_slong_p()) throw InputError("integer overflow converting " + to_string(q));
    return f.get_si();
}

}  // namespace slopegap
