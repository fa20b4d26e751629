#pragma once

#include "cluster/arith.hpp"
#include "cluster/catalog.hpp"
#include "cluster/ensemble.hpp"
#include "cluster/error.hpp"
#include "cluster/io/serialize.hpp"
#include "cluster/modular.hpp"
#include "cluster/quiver.hpp"
