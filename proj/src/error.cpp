#include "coexpand/error.hpp"

namespace coexpand {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : Error("parse error " + message), offset_(offset), expected_(std::move(expected)) {}

DomainViolation::DomainViolation(std::string primitive, double lo, double hi)
    : Error("domain violation in " + primitive + " over [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
      primitive_(std::move(primitive)),
      lo_(lo),
      hi_(hi) {}

NotGlueable::NotGlueable(GlueSide which, std::string reason)
    : Error(std::string("not glueable (") + (which == GlueSide::Left ? "left" : "right") + "): " + reason),
      which_(which),
      reason_(std::move(reason)) {}

}  // namespace coexpand
