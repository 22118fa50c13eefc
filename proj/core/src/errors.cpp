#include "tetlab/errors.hpp"

namespace tetlab {

AccuracyError::AccuracyError(const std::string& what, double estimate, double error_estimate)
    : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

}  // namespace tetlab
