#pragma once

#include <stdexcept>
#include <string>

namespace fusionlim {

// Bad or inconsistent input data: malformed permutations, elements outside
// the claimed parent group, families that are not closed, and so on.
class input_error : public std::runtime_error {
public:
    input_error(const std::string& code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(code) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// A configured resource cap was hit (group order bound, subgroup enumeration
// cap, resolution dimension cap).  Distinct from input_error so callers can
// map it to a different exit status.
class cap_error : public std::runtime_error {
public:
    cap_error(const std::string& code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(code) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// A mathematical identity that the library promises failed to hold at
// runtime.  Any throw of this type is a bug or a genuinely failing input.
class check_error : public std::runtime_error {
public:
    explicit check_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& code, const std::string& what) {
    if (!ok) throw input_error(code, what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw check_error(what);
}

} // namespace fusionlim
