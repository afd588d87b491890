#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sup {

// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Combinatorial or size guard exceeded (e.g. partition count, depth bounds).
struct guard_error : error {
  explicit guard_error(const std::string& what) : error(what) {}
};

// Exact/float scalars mixed without an explicit promotion.
struct kind_error : error {
  explicit kind_error(const std::string& what) : error(what) {}
};

// Malformed input document or string (JSON schema, parse failures).
struct schema_error : error {
  explicit schema_error(const std::string& what) : error(what) {}
};

// Requested capability not provided by a model (e.g. exp on a torus group).
struct capability_error : error {
  explicit capability_error(const std::string& what) : error(what) {}
};

// A table lacks entries required by the requested computation.
struct incomplete_error : error {
  incomplete_error(const std::string& what, std::vector<std::string> missing_)
      : error(what), missing(std::move(missing_)) {}
  std::vector<std::string> missing;
};

}  // namespace sup
