#include "qemb/common.hpp"

namespace qemb {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("parse_rat: empty string");
    Rat r;
    if (r.set_str(s, 10) != 0) throw Error("parse_rat: malformed rational '" + s + "'");
    if (r.get_den() == 0) throw Error("parse_rat: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string format_rat(const Rat& r) {
    return r.get_str();
}

}  // namespace qemb
