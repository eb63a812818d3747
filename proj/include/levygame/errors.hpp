#ifndef LEVYGAME_ERRORS_HPP
#define LEVYGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace levygame {

/// Two roots of (psi(s) - q)(beta + s) = 0 are closer than the distinctness
/// tolerance; the partial-fraction representation of the scale function is
/// not available for such parameter sets.
class NearlyRepeatedRootsError : public std::runtime_error {
public:
    explicit NearlyRepeatedRootsError(const std::string& what)
        : std::runtime_error(what) {}
};

/// h_c^o (or h_p) has no finite sign-change point below its reward root.
class NoFiniteRootError : public std::runtime_error {
public:
    explicit NoFiniteRootError(const std::string& what)
        : std::runtime_error(what) {}
};

/// I(.; l) has no root because l lies below the admissible region.
class NoBestResponseError : public std::runtime_error {
public:
    explicit NoBestResponseError(const std::string& what)
        : std::runtime_error(what) {}
};

/// The equilibrium scan found no sign change of l -> J(l; a~(l)).
class NoSignChangeError : public std::runtime_error {
public:
    explicit NoSignChangeError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A bisection over a bracket found no sign change at its endpoints.
class NoBracketError : public std::runtime_error {
public:
    explicit NoBracketError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace levygame

#endif
