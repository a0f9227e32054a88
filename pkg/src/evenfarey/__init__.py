"""Even-denominator Farey fractions: pairs, tessellation and local density."""
