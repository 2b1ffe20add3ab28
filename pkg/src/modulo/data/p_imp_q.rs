P -> P => Q
