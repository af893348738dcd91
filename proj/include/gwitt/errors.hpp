#pragma once

#include <stdexcept>
#include <string>

namespace gwitt {

/// Bad user input: malformed tables, non-closed truncation sets, context mismatches.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical consistency check failed (Dwork congruence, golden-data diff, ...).
class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource bound was exceeded (group size, expansion term count).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gwitt
