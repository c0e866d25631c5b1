#pragma once

#include <stdexcept>
#include <string>

namespace mcmap {

// Thrown when an iterative scheme exhausts its budget before reaching tolerance.
class no_convergence_error : public std::runtime_error {
  public:
    explicit no_convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mcmap
