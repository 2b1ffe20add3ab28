# its translation with parameter P
P -> (top => P => P) /\ (top => P => P)
