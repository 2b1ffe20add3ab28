P -> P => P
