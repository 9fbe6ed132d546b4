# nonneg, subadd, thm1 and thm2 instances on four parties
# coordinates: A B C D AB AC AD
H
7 41
1 0 0 0 0 0 0
0 1 0 0 0 0 0
0 0 1 0 0 0 0
0 0 0 1 0 0 0
0 0 0 0 1 0 0
0 0 0 0 0 1 0
0 0 0 0 0 0 1
1 1 0 0 -1 0 0
1 0 1 0 0 -1 0
1 0 0 1 0 0 -1
1 0 0 -1 0 0 1
1 0 -1 0 0 1 0
1 -1 0 0 1 0 0
0 1 1 0 0 0 -1
0 1 0 1 0 -1 0
0 1 0 -1 0 1 0
0 1 -1 0 0 0 1
-1 1 0 0 1 0 0
0 0 1 1 -1 0 0
0 0 1 -1 1 0 0
0 -1 1 0 0 0 1
-1 0 1 0 0 1 0
0 0 -1 1 1 0 0
0 -1 0 1 0 1 0
-1 0 0 1 0 0 1
-1 0 0 0 1 1 0
-1 0 0 0 1 0 1
-1 0 0 0 0 1 1
0 -1 0 0 1 0 1
0 -1 0 0 1 1 0
0 -1 0 0 0 1 1
0 0 -1 0 0 1 1
0 0 -1 0 1 1 0
0 0 -1 0 1 0 1
0 0 0 -1 0 1 1
0 0 0 -1 1 0 1
0 0 0 -1 1 1 0
-2 0 0 0 1 1 1
0 -2 0 0 1 1 1
0 0 -2 0 1 1 1
0 0 0 -2 1 1 1
