#include "tauto/numeric.hpp"

#include <cstring>

namespace tauto {

std::string Real::decimal(std::size_t digits) const {
    if (digits == 0) digits = 1;
    if (mpfr_zero_p(x_)) return "0";
    if (!mpfr_number_p(x_)) return mpfr_nan_p(x_) ? "nan" : (sign() > 0 ? "inf" : "-inf");

    mpfr_exp_t exp = 0;
    char* s = mpfr_get_str(nullptr, &exp, 10, digits, x_, MPFR_RNDZ);
    std::string mant(s);
    mpfr_free_str(s);

    std::string sign_part;
    if (!mant.empty() && mant[0] == '-') {
        sign_part = "-";
        mant.erase(0, 1);
    }
    // value = 0.mant * 10^exp
    std::string out;
    if (exp <= 0 && exp > -8) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
    } else if (exp > 0 && static_cast<std::size_t>(exp) <= digits + 4) {
        if (static_cast<std::size_t>(exp) >= mant.size())
            out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
        else
            out = mant.substr(0, static_cast<std::size_t>(exp)) + "." + mant.substr(static_cast<std::size_t>(exp));
    } else {
        out = "0." + mant + "e" + std::to_string(exp);
    }
    // strip trailing zeros after a decimal point, but keep at least one digit
    if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return sign_part + out;
}

}  // namespace tauto
