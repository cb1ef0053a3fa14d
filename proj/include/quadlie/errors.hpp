#pragma once

#include <stdexcept>
#include <string>

namespace quadlie {

/// Caller supplied data that violates an operation's precondition
/// (dimension mismatch, wrong form kind, unknown name, bad file).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A certification step failed: an identity that must hold exactly does not.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// A heuristic search came back empty. Not a proof of nonexistence
/// unless `definitive()` says so.
class SearchAbsence : public std::runtime_error {
public:
    SearchAbsence(const std::string& what, bool definitive)
        : std::runtime_error(what), definitive_(definitive) {}
    bool definitive() const noexcept { return definitive_; }

private:
    bool definitive_;
};

}  // namespace quadlie
