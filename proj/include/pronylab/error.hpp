#ifndef PRONYLAB_ERROR_HPP
#define PRONYLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pronylab {

enum class errc {
    invalid_argument,
    parse,
    io,
    dimension_mismatch,
    numerical,
    budget_exhausted,
    unknown_theorem,
};

/// Library-wide exception carrying a coarse error class for the C surface.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace pronylab

#endif
