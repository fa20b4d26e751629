#pragma once

#include "cluster/quiver/isomorphism.hpp"
#include "cluster/quiver/mutation_class.hpp"
#include "cluster/quiver/quiver.hpp"
