#pragma once

#include <stdexcept>
#include <string>

namespace ubrep {

// Base class for all library errors. Subcommands map these to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- numeric kernel -------------------------------------------------------

struct SingularInput : Error {
    explicit SingularInput(const std::string& what = "matrix is numerically singular") : Error(what) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(double defect)
        : Error("matrix is not Hermitian (defect " + std::to_string(defect) + ")"), defect(defect) {}
    double defect;
};

struct NotPositive : Error {
    explicit NotPositive(double eigenvalue)
        : Error("matrix has a non-positive eigenvalue " + std::to_string(eigenvalue)), eigenvalue(eigenvalue) {}
    double eigenvalue;
};

struct BadBounds : Error {
    explicit BadBounds(const std::string& what = "invalid clamp bounds") : Error(what) {}
};

struct BadParameter : Error {
    explicit BadParameter(const std::string& what = "parameter out of range") : Error(what) {}
};

// --- set families ---------------------------------------------------------

struct UniverseTooSmall : Error {
    explicit UniverseTooSmall(const std::string& what) : Error(what) {}
};

struct RecursionExhausted : Error {
    RecursionExhausted(int position, const std::string& what)
        : Error(what), position(position) {}
    int position;  // enumeration index n whose minimum does not exist
};

struct IndexMismatch : Error {
    explicit IndexMismatch(const std::string& what = "families lack consistent global indices") : Error(what) {}
};

// --- sequences and representations ---------------------------------------

struct BadIndex : Error {
    explicit BadIndex(const std::string& what = "index out of range") : Error(what) {}
};

struct WindowMismatch : Error {
    explicit WindowMismatch(const std::string& what = "sequence windows differ") : Error(what) {}
};

struct NotAGroup : Error {
    NotAGroup(std::size_t lhs, std::size_t rhs, double distance)
        : Error("image set is not closed under multiplication: product of elements " +
                std::to_string(lhs) + " and " + std::to_string(rhs) +
                " is " + std::to_string(distance) + " away from the set"),
          lhs(lhs), rhs(rhs), distance(distance) {}
    std::size_t lhs, rhs;
    double distance;
};

struct NotMultiplicative : Error {
    explicit NotMultiplicative(const std::string& what = "map is not multiplicative on sampled words") : Error(what) {}
};

// --- i/o -------------------------------------------------------------------

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace ubrep
