# P rewrites to a trivially true conjunction
P -> top /\ top
