"""Repository-wide numeric tolerances."""

#: Allowed deviation of a proportion or weight vector's sum from 1.
SUM_TOL = 1e-9

#: Slack used when comparing two diversity values for an ordering property.
COMPARE_SLACK = 1e-9

#: Maximum disagreement between a closed-form reduction and the index.
ORACLE_TOL = 1e-10

#: Slack on the [0, 1] range check of matrix entries.
RANGE_TOL = 1e-12
