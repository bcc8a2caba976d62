#pragma once

#include "oodn/class_file.hpp"
#include "oodn/errors.hpp"
#include "oodn/exploiters.hpp"
#include "oodn/model.hpp"
#include "oodn/registry.hpp"
