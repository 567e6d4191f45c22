#include "fisherce/rational.hpp"

#include "fisherce/errors.hpp"

#include <cctype>

namespace fisherce {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

[[noreturn]] void bad_number(std::string_view text) {
    throw InvalidInput("not an exact number: \"" + std::string(text) + "\"");
}

Rational parse_decimal(std::string_view text, std::string_view original) {
    int exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        bool neg = false;
        if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
            neg = exp_part[0] == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 4)
            bad_number(original);
        exponent = std::stoi(std::string(exp_part));
        if (neg)
            exponent = -exponent;
        text = text.substr(0, e);
    }
    std::string digits;
    int fraction_digits = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            bad_number(original);
        digits = std::string(int_part) + std::string(frac_part);
        fraction_digits = static_cast<int>(frac_part.size());
    } else {
        if (!all_digits(text))
            bad_number(original);
        digits = std::string(text);
    }
    Rational value(mpz_class(digits, 10));
    int scale = exponent - fraction_digits;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale < 0)
        value /= Rational(ten_pow);
    else
        value *= Rational(ten_pow);
    value.canonicalize();
    return value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view original = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    bool negative = false;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        negative = text[0] == '-';
        text.remove_prefix(1);
    }
    if (text.empty())
        bad_number(original);

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            bad_number(original);
        mpz_class d(std::string(den), 10);
        if (d == 0)
            throw InvalidInput("zero denominator in \"" + std::string(original) + "\"");
        value = Rational(mpz_class(std::string(num), 10), d);
        value.canonicalize();
    } else {
        value = parse_decimal(text, original);
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& raw) {
    Rational q = raw;
    q.canonicalize();
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class floor(const Rational& q) {
    mpz_class result;
    mpz_fdiv_q(result.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return result;
}

} // namespace fisherce
