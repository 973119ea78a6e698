#include "sdkim/angle.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "sdkim/model.hpp"

namespace sdkim {

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

bool match_pi(const std::string& s, size_t& i) {
    if (i + 1 < s.size() && (s[i] == 'p' || s[i] == 'P') &&
        (s[i + 1] == 'i' || s[i + 1] == 'I')) {
        i += 2;
        return true;
    }
    return false;
}

// number := digits [ '.' digits ] [ ('e'|'E') [sign] digits ]
bool match_number(const std::string& s, size_t& i, double& out) {
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    bool any = i > start;
    if (i < s.size() && s[i] == '.') {
        ++i;
        size_t fs = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        any = any || i > fs;
    }
    if (!any) {
        i = start;
        return false;
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        size_t es = i++;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t ds = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == ds) i = es;  // bare 'e' belongs to nothing; back off
    }
    out = std::stod(s.substr(start, i - start));
    return true;
}

}  // namespace

double parse_angle(const std::string& text) {
    size_t i = 0;
    skip_ws(text, i);
    double sign = 1.0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') sign = -1.0;
        ++i;
    }
    skip_ws(text, i);

    double coeff = 1.0;
    bool have_coeff = match_number(text, i, coeff);
    skip_ws(text, i);
    if (have_coeff && i < text.size() && text[i] == '*') {
        ++i;
        skip_ws(text, i);
    }
    bool have_pi = match_pi(text, i);
    if (!have_coeff && !have_pi)
        throw std::invalid_argument("bad angle literal: '" + text + "'");

    double value = (have_coeff ? coeff : 1.0) * (have_pi ? pi : 1.0);

    skip_ws(text, i);
    if (i < text.size() && text[i] == '/') {
        ++i;
        skip_ws(text, i);
        double den = 0.0;
        if (!match_number(text, i, den) || den == 0.0)
            throw std::invalid_argument("bad angle denominator: '" + text + "'");
        value /= den;
    }
    skip_ws(text, i);
    if (i != text.size())
        throw std::invalid_argument("trailing characters in angle: '" + text + "'");
    return sign * value;
}

std::string format_angle(double value) {
    if (value == 0.0) return "0";
    // Look for value = k*pi/n with small integers, tight relative tolerance.
    for (int n = 1; n <= 64; ++n) {
        double k_real = value * n / pi;
        double k_round = std::round(k_real);
        if (k_round == 0.0 || std::abs(k_round) > 64) continue;
        double recon = k_round * pi / n;
        if (std::abs(recon - value) <= 4e-16 * std::abs(value)) {
            long k = static_cast<long>(k_round);
            long kk = std::labs(k);
            long g = std::gcd(kk, static_cast<long>(n));
            kk /= g;
            long nn = n / g;
            std::string s = (k < 0) ? "-" : "";
            if (kk != 1) s += std::to_string(kk);
            s += "pi";
            if (nn != 1) s += "/" + std::to_string(nn);
            // Only claim exactness if the double round-trips.
            if (parse_angle(s) == value) return s;
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace sdkim
