""" Tests """
