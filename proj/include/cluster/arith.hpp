#pragma once

#include "cluster/arith/evaluate.hpp"
#include "cluster/arith/gcd.hpp"
#include "cluster/arith/monomial.hpp"
#include "cluster/arith/polynomial.hpp"
#include "cluster/arith/rational_function.hpp"
#include "cluster/arith/text.hpp"
