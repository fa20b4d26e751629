#pragma once

#include "cluster/catalog/catalog.hpp"
#include "cluster/catalog/functions.hpp"
#include "cluster/catalog/quivers.hpp"
