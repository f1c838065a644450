#pragma once

#include <stdexcept>

namespace halfwt {

/// A mathematical certificate (dimension, irreducibility, eigenspace, lift)
/// could not be established. The CLI maps these to exit status 3.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace halfwt
