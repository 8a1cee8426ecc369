#ifndef BRAKET_BRAKET_HPP
#define BRAKET_BRAKET_HPP

#include "braket/dsl.hpp"
#include "braket/error.hpp"
#include "braket/functional.hpp"
#include "braket/hilbert.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/model_file.hpp"
#include "braket/observable.hpp"
#include "braket/permutation.hpp"
#include "braket/random.hpp"
#include "braket/report.hpp"
#include "braket/suites.hpp"
#include "braket/tensor.hpp"

#endif
