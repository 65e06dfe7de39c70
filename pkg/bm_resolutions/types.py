"""Semantic type aliases (PEP 695)."""

# Bit vector over generator indices: bit i set <=> generator i is a member.
type GenSubset = int

# Index of a minimal generator, 0..n-1.
type GenIndex = int

# Exponent vector, one entry per variable.
type Exponents = tuple[int, ...]

# Fiber identifier of a grading. The lcm grading uses the lcm exponents; the
# linear-quotients grading appends the index of the order-maximal generator.
type FiberLabel = tuple[int, ...]

__all__ = ["GenSubset", "GenIndex", "Exponents", "FiberLabel"]
