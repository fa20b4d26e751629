#pragma once

#include "cluster/ensemble/seed.hpp"
