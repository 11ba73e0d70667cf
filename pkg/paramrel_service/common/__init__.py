"""file formats, run configuration and random streams shared by the commands"""
