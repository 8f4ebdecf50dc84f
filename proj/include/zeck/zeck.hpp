#ifndef ZECK_ZECK_HPP
#define ZECK_ZECK_HPP

#include "zeck/core.hpp"
#include "zeck/schedule.hpp"
#include "zeck/sequence.hpp"
#include "zeck/constructor.hpp"
#include "zeck/decomposer.hpp"
#include "zeck/uniqueness.hpp"
#include "zeck/stats.hpp"
#include "zeck/gnary.hpp"
#include "zeck/tree.hpp"

#endif  // ZECK_ZECK_HPP
