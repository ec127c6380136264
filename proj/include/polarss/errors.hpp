#ifndef POLARSS_ERRORS_HPP
#define POLARSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polarss {

// File format violation: bad magic line, unknown or duplicate key,
// malformed value.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A coalition that cannot reconstruct the secret in the requested mode.
class UnqualifiedError : public std::runtime_error {
public:
    explicit UnqualifiedError(const std::string& what) : std::runtime_error(what) {}
};

// Shares that cannot belong to any codeword, or a digest mismatch between
// share files and the loaded code.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarss

#endif
