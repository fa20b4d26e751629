#pragma once

#include "cluster/modular/action.hpp"
#include "cluster/modular/group_element.hpp"
